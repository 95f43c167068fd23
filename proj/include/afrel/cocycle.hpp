#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "afrel/diagram.hpp"

namespace afrel {

// Target group of a labelling: the additive reals or the lattice Z^k.
struct Group {
  enum class Kind { Reals, Lattice };
  Kind kind = Kind::Reals;
  int rank = 1;  // k for Z^k; 1 for the reals

  static Group reals() { return Group{Kind::Reals, 1}; }
  static Group lattice(int k);

  bool is_exact() const noexcept { return kind == Kind::Lattice; }
  std::string name() const;

  friend bool operator==(const Group&, const Group&) = default;
};

// Element of an additive abelian group. Lattice arithmetic is exact.
class GroupElement {
 public:
  GroupElement() : value_(0.0) {}
  GroupElement(double x) : value_(x) {}  // NOLINT(google-explicit-constructor)
  explicit GroupElement(std::vector<std::int64_t> v) : value_(std::move(v)) {}

  static GroupElement zero(const Group& g);

  bool is_real() const noexcept { return std::holds_alternative<double>(value_); }
  double real() const;
  const std::vector<std::int64_t>& lattice() const;
  bool belongs_to(const Group& g) const;
  bool is_zero() const;

  GroupElement& operator+=(const GroupElement& other);
  GroupElement& operator-=(const GroupElement& other);
  GroupElement operator-() const;
  friend GroupElement operator+(GroupElement a, const GroupElement& b) { return a += b; }
  friend GroupElement operator-(GroupElement a, const GroupElement& b) { return a -= b; }
  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend bool operator<(const GroupElement& a, const GroupElement& b) { return a.value_ < b.value_; }

  std::string to_string() const;

 private:
  std::variant<double, std::vector<std::int64_t>> value_;
};

// Exact equality for lattice elements, absolute tolerance for reals.
bool approx_equal(const GroupElement& a, const GroupElement& b, double tol);

// Edge labelling f: E -> A, keyed by (level, edge id).
class Labelling {
 public:
  explicit Labelling(Group group = Group::reals()) : group_(group) {}

  // Labels every edge of d with its attached weight (Edge::label). Throws
  // InvalidInput when some edge carries no label.
  static Labelling from_edge_labels(const BratteliDiagram& d);

  const Group& group() const noexcept { return group_; }
  void set(int level, int edge_id, GroupElement value);
  bool contains(int level, int edge_id) const { return values_.count({level, edge_id}) != 0; }
  // Throws InvalidInput ("missing edge label") when absent.
  const GroupElement& at(int level, int edge_id) const;
  double real_at(int level, int edge_id) const { return at(level, edge_id).real(); }

  // First missing (level, edge id) over the diagram's edges, if any.
  std::optional<std::pair<int, int>> first_missing(const BratteliDiagram& d) const;
  bool is_total_on(const BratteliDiagram& d) const { return !first_missing(d).has_value(); }

  // Elementwise log of a positive real labelling (Phi -> log Phi).
  Labelling log() const;

  const std::map<std::pair<int, int>, GroupElement>& values() const noexcept { return values_; }

 private:
  Group group_;
  std::map<std::pair<int, int>, GroupElement> values_;
};

// Finite-depth coboundary: psi defined on depth-k paths.
struct CoboundaryData {
  int range = 1;
  std::map<std::vector<int>, GroupElement> psi;

  const GroupElement& at(const FinitePath& prefix) const;
};

// Quasi-product cocycle value c(az, bz) = sum_i f(a_i) - f(b_i). Differences
// are accumulated level by level, so identical tail edges cancel exactly.
GroupElement eval_quasi_product(const Labelling& f, const TailPair& pair);

// psi(a|k) + c_f(a, b) - psi(b|k). Throws InvalidInput when the pair is
// shallower than psi.range.
GroupElement apply_coboundary(const Labelling& f, const CoboundaryData& psi, const TailPair& pair);

using CocycleEvaluator = std::function<GroupElement(const TailPair&)>;

// c(a,b) + c(b,c) == c(a,c), exactly for lattices and within tol for reals.
// Throws InvalidInput unless a, b, c share depth and terminal vertex.
bool check_cocycle_identity(const CocycleEvaluator& c, const Group& group, const BratteliDiagram& d,
                            const FinitePath& a, const FinitePath& b, const FinitePath& c3, double tol = 1e-12);
bool check_cocycle_identity(const Labelling& f, const BratteliDiagram& d, const FinitePath& a, const FinitePath& b,
                            const FinitePath& c, double tol = 1e-12);

}  // namespace afrel

#include "afrel/cocycle.hpp"

#include <cmath>
#include <sstream>

#include "afrel/error.hpp"

namespace afrel {

Group Group::lattice(int k) {
  if (k < 1) invalid_input("lattice rank must be positive");
  return Group{Kind::Lattice, k};
}

std::string Group::name() const { return kind == Kind::Reals ? "R" : "Z^" + std::to_string(rank); }

GroupElement GroupElement::zero(const Group& g) {
  if (g.kind == Group::Kind::Reals) return GroupElement(0.0);
  return GroupElement(std::vector<std::int64_t>(static_cast<std::size_t>(g.rank), 0));
}

double GroupElement::real() const {
  if (!is_real()) invalid_input("expected a real group element, got a lattice vector");
  return std::get<double>(value_);
}

const std::vector<std::int64_t>& GroupElement::lattice() const {
  if (is_real()) invalid_input("expected a lattice group element, got a real");
  return std::get<std::vector<std::int64_t>>(value_);
}

bool GroupElement::belongs_to(const Group& g) const {
  if (g.kind == Group::Kind::Reals) return is_real();
  return !is_real() && lattice().size() == static_cast<std::size_t>(g.rank);
}

bool GroupElement::is_zero() const {
  if (is_real()) return real() == 0.0;
  for (auto x : lattice())
    if (x != 0) return false;
  return true;
}

GroupElement& GroupElement::operator+=(const GroupElement& other) {
  if (is_real() != other.is_real()) invalid_input("mixed real and lattice arithmetic");
  if (is_real()) {
    std::get<double>(value_) += other.real();
    return *this;
  }
  auto& mine = std::get<std::vector<std::int64_t>>(value_);
  const auto& theirs = other.lattice();
  if (mine.size() != theirs.size()) invalid_input("lattice rank mismatch");
  for (std::size_t i = 0; i < mine.size(); ++i) mine[i] += theirs[i];
  return *this;
}

GroupElement& GroupElement::operator-=(const GroupElement& other) { return *this += -other; }

GroupElement GroupElement::operator-() const {
  if (is_real()) return GroupElement(-real());
  auto v = lattice();
  for (auto& x : v) x = -x;
  return GroupElement(std::move(v));
}

std::string GroupElement::to_string() const {
  std::ostringstream os;
  if (is_real()) {
    os.precision(17);
    os << real();
    return os.str();
  }
  os << '(';
  const auto& v = lattice();
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

bool approx_equal(const GroupElement& a, const GroupElement& b, double tol) {
  if (a.is_real() != b.is_real()) return false;
  if (a.is_real()) return std::abs(a.real() - b.real()) <= tol;
  return a == b;
}

Labelling Labelling::from_edge_labels(const BratteliDiagram& d) {
  Labelling f(Group::reals());
  for (int n = 1; n <= d.levels(); ++n)
    for (const Edge& e : d.edges(n)) {
      if (!e.label) invalid_input("edge " + std::to_string(e.id) + "@" + std::to_string(n) + " has no label");
      f.set(n, e.id, *e.label);
    }
  return f;
}

void Labelling::set(int level, int edge_id, GroupElement value) {
  if (!value.belongs_to(group_))
    invalid_input("label " + value.to_string() + " for edge " + std::to_string(edge_id) + "@" +
                  std::to_string(level) + " is not in " + group_.name());
  values_[{level, edge_id}] = std::move(value);
}

const GroupElement& Labelling::at(int level, int edge_id) const {
  auto it = values_.find({level, edge_id});
  if (it == values_.end())
    invalid_input("missing edge label for edge " + std::to_string(edge_id) + "@" + std::to_string(level));
  return it->second;
}

std::optional<std::pair<int, int>> Labelling::first_missing(const BratteliDiagram& d) const {
  for (int n = 1; n <= d.levels(); ++n)
    for (const Edge& e : d.edges(n))
      if (!contains(n, e.id)) return std::pair{n, e.id};
  return std::nullopt;
}

Labelling Labelling::log() const {
  if (group_.kind != Group::Kind::Reals) invalid_input("log of a lattice labelling");
  Labelling out(Group::reals());
  for (const auto& [key, value] : values_) {
    if (!(value.real() > 0.0))
      invalid_input("weight of edge " + std::to_string(key.second) + "@" + std::to_string(key.first) +
                    " is not positive");
    out.values_[key] = GroupElement(std::log(value.real()));
  }
  return out;
}

const GroupElement& CoboundaryData::at(const FinitePath& prefix) const {
  auto it = psi.find(prefix.edges);
  if (it == psi.end()) invalid_input("coboundary undefined on a depth-" + std::to_string(range) + " path");
  return it->second;
}

GroupElement eval_quasi_product(const Labelling& f, const TailPair& pair) {
  if (pair.a.depth() != pair.b.depth()) invalid_input("tail pair paths differ in depth");
  GroupElement sum = GroupElement::zero(f.group());
  for (std::size_t i = 0; i < pair.a.depth(); ++i) {
    const int level = static_cast<int>(i) + 1;
    if (pair.a.edges[i] == pair.b.edges[i]) {
      f.at(level, pair.a.edges[i]);  // still a missing label is an error
      continue;
    }
    sum += f.at(level, pair.a.edges[i]) - f.at(level, pair.b.edges[i]);
  }
  return sum;
}

GroupElement apply_coboundary(const Labelling& f, const CoboundaryData& psi, const TailPair& pair) {
  const auto k = static_cast<std::size_t>(psi.range);
  if (pair.a.depth() < k)
    invalid_input("pair of depth " + std::to_string(pair.a.depth()) + " is shallower than coboundary range " +
                  std::to_string(k));
  return psi.at(pair.a.prefix(k)) + eval_quasi_product(f, pair) - psi.at(pair.b.prefix(k));
}

bool check_cocycle_identity(const CocycleEvaluator& c, const Group& group, const BratteliDiagram& d,
                            const FinitePath& a, const FinitePath& b, const FinitePath& c3, double tol) {
  const TailPair ab{a, b}, bc{b, c3}, ac{a, c3};
  if (!d.is_tail_pair(ab) || !d.is_tail_pair(bc)) invalid_input("incompatible paths for the cocycle identity");
  const GroupElement lhs = c(ab) + c(bc);
  const GroupElement rhs = c(ac);
  return group.is_exact() ? lhs == rhs : approx_equal(lhs, rhs, tol);
}

bool check_cocycle_identity(const Labelling& f, const BratteliDiagram& d, const FinitePath& a, const FinitePath& b,
                            const FinitePath& c, double tol) {
  return check_cocycle_identity([&f](const TailPair& p) { return eval_quasi_product(f, p); }, f.group(), d, a, b, c,
                                tol);
}

}  // namespace afrel

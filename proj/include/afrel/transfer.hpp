#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "afrel/matrix.hpp"

namespace afrel {

// Word over the alphabet {0..d-1}. Text form is 1-based: "121" or "1,10,2".
using Word = std::vector<int>;

Word parse_word(std::string_view text, int alphabet);
std::string format_word(const Word& w, int alphabet);

// One-sided subshift of finite type: b may follow a iff A[a][b] = 1.
class Sft {
 public:
  // Throws InvalidInput for non-square, non-0/1 input or a zero row.
  explicit Sft(std::vector<std::vector<int>> transitions);
  static Sft full(int d);

  int alphabet() const noexcept { return static_cast<int>(a_.size()); }
  bool allowed(int from, int to) const { return a_[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] != 0; }
  bool admissible(const Word& w) const;
  // Admissible words of the given length in lexicographic order.
  std::vector<Word> words(std::size_t length) const;
  Matrix matrix() const;
  const std::vector<std::vector<int>>& transitions() const noexcept { return a_; }

 private:
  std::vector<std::vector<int>> a_;
};

// Finite-range potential: phi(x) depends on x1..xk only. A constant
// potential is stored as such and has range 1.
class Potential {
 public:
  Potential(int range, std::map<Word, double> values);
  static Potential constant(double c);

  int range() const noexcept { return range_; }
  bool is_constant() const noexcept { return constant_.has_value(); }
  std::optional<double> constant_value() const noexcept { return constant_; }
  const std::map<Word, double>& values() const noexcept { return values_; }

  // Value on the window x[offset, offset + k). Throws InvalidInput when the
  // window runs past the word or the value is missing.
  double at(const Word& x, std::size_t offset = 0) const;

  // Throws InvalidInput unless every admissible k-word has a finite value.
  void require_total(const Sft& s) const;
  double min_value(const Sft& s) const;
  double max_value(const Sft& s) const;

  Potential scaled(double factor) const;
  Potential shifted(double c) const;
  // Same function written as a range-k potential, k >= range().
  Potential with_range(const Sft& s, int k) const;

 private:
  int range_ = 1;
  std::map<Word, double> values_;
  std::optional<double> constant_;
};

// Matrix of the Ruelle operator (L f)(x) = sum_{Ty=x} e^{phi(y)} f(y) on
// functions of the first l = max(k-1, 1) coordinates, indexed by the
// admissible l-words: M[w, prefix_l(a w)] += e^{phi(prefix_k(a w))} for each
// a with a w admissible.
struct TransferMatrix {
  std::vector<Word> index;
  Matrix matrix;
};

TransferMatrix build_transfer_matrix(const Sft& s, const Potential& phi);

inline constexpr double kTransferTol = 1e-12;
inline constexpr std::size_t kTransferMaxIter = 100000;

// log of the leading eigenvalue of the transfer matrix. Refuses a
// non-primitive shift.
double pressure(const Sft& s, const Potential& phi, double tol = kTransferTol, std::size_t max_iter = kTransferMaxIter);

// L h = lambda h and tL nu = lambda nu, with nu a probability vector on the
// index words and sum h nu = 1. Residuals are relative:
// ||M h - lambda h||_inf / (lambda ||h||_inf), likewise for nu.
struct TransferResult {
  double lambda = 0.0;
  double pressure = 0.0;
  int range = 1;
  std::vector<Word> index;
  std::vector<double> h;
  std::vector<double> nu;
  double residual_h = 0.0;
  double residual_nu = 0.0;
  std::size_t iterations_h = 0;
  std::size_t iterations_nu = 0;

  std::size_t index_length() const { return index.empty() ? 1 : index.front().size(); }
};

TransferResult leading_eigen(const Sft& s, const Potential& phi, double tol = kTransferTol,
                             std::size_t max_iter = kTransferMaxIter);

// log mu(Z(w)) of the eigenmeasure, via
// mu(Z(a w')) = lambda^-1 e^{phi(prefix_k(a w'))} mu(Z(w')) down to the
// stored marginals. -infinity for an inadmissible word. Requires |w| at
// least the index length.
double eigenmeasure_cylinder(const Sft& s, const Potential& phi, const TransferResult& result, const Word& w);

struct JacobianReport {
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  double max_deviation = 0.0;
  std::vector<std::pair<Word, double>> failures;  // first few only

  bool ok() const noexcept { return failure_count == 0; }
};

// Checks log mu(Z(w)) - log mu(Z(Tw)) = phi(prefix_k(w)) for every
// admissible w with index length < |w| <= depth, where mu is the
// eigenmeasure in `result`. This holds iff mu has Jacobian e^phi, which for
// the eigenmeasure of phi happens exactly when the pressure of phi is 0.
JacobianReport jacobian_check(const Sft& s, const Potential& phi, const TransferResult& result, int depth, double tol);

// Unique root of beta -> p(-beta phi) for phi > 0, by bisection on
// [0, p(0) / min phi].
double kms_beta(const Sft& s, const Potential& phi, double tol = kTransferTol);

}  // namespace afrel

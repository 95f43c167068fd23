#include "afrel/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "afrel/error.hpp"
#include "afrel/harmonic.hpp"
#include "afrel/logmath.hpp"

namespace afrel {

Word parse_word(std::string_view text, int alphabet) {
  Word out;
  auto push = [&](int symbol) {
    if (symbol < 1 || symbol > alphabet)
      invalid_input("symbol " + std::to_string(symbol) + " outside 1.." + std::to_string(alphabet));
    out.push_back(symbol - 1);
  };
  if (text.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find(',', start), text.size());
      const std::string_view piece = text.substr(start, end - start);
      if (piece.empty() || !std::all_of(piece.begin(), piece.end(), [](char c) { return c >= '0' && c <= '9'; }))
        invalid_input("malformed word '" + std::string(text) + "'");
      push(std::stoi(std::string(piece)));
      start = end + 1;
    }
    return out;
  }
  for (char c : text) {
    if (c < '0' || c > '9') invalid_input("malformed word '" + std::string(text) + "'");
    push(c - '0');
  }
  return out;
}

std::string format_word(const Word& w, int alphabet) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (alphabet > 9 && i > 0) out += ',';
    out += std::to_string(w[i] + 1);
  }
  return out;
}

Sft::Sft(std::vector<std::vector<int>> transitions) : a_(std::move(transitions)) {
  if (a_.empty()) invalid_input("shift needs a nonempty alphabet");
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (a_[i].size() != a_.size()) invalid_input("transition matrix must be square");
    bool any = false;
    for (int x : a_[i]) {
      if (x != 0 && x != 1) invalid_input("transition matrix entries must be 0 or 1");
      any = any || x == 1;
    }
    if (!any) invalid_input("symbol " + std::to_string(i + 1) + " has no successor");
  }
}

Sft Sft::full(int d) {
  if (d < 1) invalid_input("alphabet size must be positive");
  return Sft(std::vector<std::vector<int>>(static_cast<std::size_t>(d), std::vector<int>(static_cast<std::size_t>(d), 1)));
}

bool Sft::admissible(const Word& w) const {
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] < 0 || w[i] >= alphabet()) return false;
    if (i > 0 && !allowed(w[i - 1], w[i])) return false;
  }
  return true;
}

std::vector<Word> Sft::words(std::size_t length) const {
  std::vector<Word> out;
  if (length == 0) return {Word{}};
  for (int a = 0; a < alphabet(); ++a) out.push_back(Word{a});
  for (std::size_t len = 1; len < length; ++len) {
    std::vector<Word> next;
    for (const Word& w : out)
      for (int b = 0; b < alphabet(); ++b)
        if (allowed(w.back(), b)) {
          Word x = w;
          x.push_back(b);
          next.push_back(std::move(x));
        }
    out = std::move(next);
  }
  return out;
}

Matrix Sft::matrix() const {
  Matrix m(a_.size(), a_.size());
  for (std::size_t i = 0; i < a_.size(); ++i)
    for (std::size_t j = 0; j < a_.size(); ++j) m(i, j) = a_[i][j];
  return m;
}

Potential::Potential(int range, std::map<Word, double> values) : range_(range), values_(std::move(values)) {
  if (range_ < 1) invalid_input("potential range must be positive");
  for (const auto& [w, x] : values_) {
    if (w.size() != static_cast<std::size_t>(range_))
      invalid_input("potential word of length " + std::to_string(w.size()) + " in a range-" + std::to_string(range_) +
                    " potential");
    if (!std::isfinite(x)) invalid_input("potential values must be finite");
  }
}

Potential Potential::constant(double c) {
  if (!std::isfinite(c)) invalid_input("potential values must be finite");
  Potential p(1, {});
  p.constant_ = c;
  return p;
}

double Potential::at(const Word& x, std::size_t offset) const {
  const auto k = static_cast<std::size_t>(range_);
  if (offset + k > x.size()) invalid_input("window of a range-" + std::to_string(range_) + " potential runs past the word");
  if (constant_) return *constant_;
  const Word window(x.begin() + static_cast<std::ptrdiff_t>(offset), x.begin() + static_cast<std::ptrdiff_t>(offset + k));
  auto it = values_.find(window);
  if (it == values_.end()) invalid_input("potential has no value on the admissible word " + format_word(window, 10));
  return it->second;
}

void Potential::require_total(const Sft& s) const {
  if (constant_) return;
  for (const Word& w : s.words(static_cast<std::size_t>(range_))) at(w);
}

double Potential::min_value(const Sft& s) const {
  if (constant_) return *constant_;
  double m = std::numeric_limits<double>::infinity();
  for (const Word& w : s.words(static_cast<std::size_t>(range_))) m = std::min(m, at(w));
  return m;
}

double Potential::max_value(const Sft& s) const {
  if (constant_) return *constant_;
  double m = -std::numeric_limits<double>::infinity();
  for (const Word& w : s.words(static_cast<std::size_t>(range_))) m = std::max(m, at(w));
  return m;
}

Potential Potential::scaled(double factor) const {
  if (constant_) return constant(*constant_ * factor);
  auto v = values_;
  for (auto& [w, x] : v) x *= factor;
  return Potential(range_, std::move(v));
}

Potential Potential::shifted(double c) const {
  if (constant_) return constant(*constant_ + c);
  auto v = values_;
  for (auto& [w, x] : v) x += c;
  return Potential(range_, std::move(v));
}

Potential Potential::with_range(const Sft& s, int k) const {
  if (k < range_) invalid_input("cannot shorten the range of a potential");
  if (constant_ && k == 1) return *this;
  std::map<Word, double> v;
  for (const Word& w : s.words(static_cast<std::size_t>(k))) v[w] = at(w);
  return Potential(k, std::move(v));
}

namespace {

std::size_t index_length(const Potential& phi) { return static_cast<std::size_t>(std::max(phi.range() - 1, 1)); }

std::size_t index_of(const std::vector<Word>& index, const Word& w) {
  auto it = std::lower_bound(index.begin(), index.end(), w);
  if (it == index.end() || *it != w) invalid_input("word is not an admissible index word");
  return static_cast<std::size_t>(it - index.begin());
}

void require_primitive(const Sft& s) {
  if (!is_primitive(s.matrix()))
    refuse("transition matrix is not primitive; the transfer operator may have no unique leading eigendata");
}

// Transfer matrix of phi - max(phi): entries in (0, 1], so that large
// potentials neither overflow nor underflow. Returns the removed constant.
std::pair<TransferMatrix, double> normalized_transfer_matrix(const Sft& s, const Potential& phi) {
  phi.require_total(s);
  const double top = phi.max_value(s);
  return {build_transfer_matrix(s, phi.shifted(-top)), top};
}

double relative_residual(const Matrix& m, const std::vector<double>& x, double lambda, bool transpose) {
  const std::vector<double> mx = transpose ? m.apply_transposed(x) : m.apply(x);
  double r = 0.0;
  double norm = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    r = std::max(r, std::abs(mx[i] - lambda * x[i]));
    norm = std::max(norm, std::abs(x[i]));
  }
  return r / (lambda * norm);
}

}  // namespace

TransferMatrix build_transfer_matrix(const Sft& s, const Potential& phi) {
  phi.require_total(s);
  const std::size_t l = index_length(phi);
  const auto k = static_cast<std::size_t>(phi.range());
  TransferMatrix out{s.words(l), Matrix()};
  out.matrix = Matrix(out.index.size(), out.index.size());
  for (std::size_t row = 0; row < out.index.size(); ++row) {
    const Word& w = out.index[row];
    for (int a = 0; a < s.alphabet(); ++a) {
      if (!s.allowed(a, w.front())) continue;
      Word y{a};
      y.insert(y.end(), w.begin(), w.end());
      const Word target(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(l));
      out.matrix(row, index_of(out.index, target)) += std::exp(phi.at(Word(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(k))));
    }
  }
  return out;
}

double pressure(const Sft& s, const Potential& phi, double tol, std::size_t max_iter) {
  require_primitive(s);
  const auto [tm, top] = normalized_transfer_matrix(s, phi);
  return top + std::log(power_iterate(tm.matrix, tol, max_iter).lambda);
}

TransferResult leading_eigen(const Sft& s, const Potential& phi, double tol, std::size_t max_iter) {
  require_primitive(s);
  const auto [tm, top] = normalized_transfer_matrix(s, phi);
  const PowerIteration right = power_iterate(tm.matrix, tol, max_iter, false);
  const PowerIteration left = power_iterate(tm.matrix, tol, max_iter, true);

  TransferResult out;
  out.pressure = top + std::log(right.lambda);
  out.lambda = std::exp(out.pressure);
  out.range = phi.range();
  out.index = tm.index;
  out.nu = left.vector;
  double pairing = 0.0;
  for (std::size_t i = 0; i < out.nu.size(); ++i) pairing += right.vector[i] * out.nu[i];
  out.h = right.vector;
  for (double& x : out.h) x /= pairing;
  out.residual_h = relative_residual(tm.matrix, out.h, right.lambda, false);
  out.residual_nu = relative_residual(tm.matrix, out.nu, right.lambda, true);
  out.iterations_h = right.iterations;
  out.iterations_nu = left.iterations;
  return out;
}

double eigenmeasure_cylinder(const Sft& s, const Potential& phi, const TransferResult& result, const Word& w) {
  if (phi.range() != result.range) invalid_input("potential range differs from the eigen data's range");
  const std::size_t l = result.index_length();
  if (w.size() < l)
    invalid_input("cylinder word shorter than the index length " + std::to_string(l));
  if (!s.admissible(w)) return kLogZero;
  const std::size_t lead = w.size() - l;
  const Word tail(w.begin() + static_cast<std::ptrdiff_t>(lead), w.end());
  double acc = std::log(result.nu[index_of(result.index, tail)]);
  for (std::size_t i = 0; i < lead; ++i) acc += phi.at(w, i) - result.pressure;
  return acc;
}

JacobianReport jacobian_check(const Sft& s, const Potential& phi, const TransferResult& result, int depth, double tol) {
  constexpr std::size_t kKeptFailures = 16;
  JacobianReport report;
  const std::size_t l = result.index_length();
  for (std::size_t m = l + 1; m <= static_cast<std::size_t>(std::max(depth, 0)); ++m) {
    for (const Word& w : s.words(m)) {
      const Word tw(w.begin() + 1, w.end());
      // mu(Z(Tw)) through additivity over one more symbol rather than the
      // defining recursion, so a wrong nu or lambda shows up here.
      std::vector<double> parts;
      for (int c = 0; c < s.alphabet(); ++c)
        if (s.allowed(tw.back(), c)) {
          Word x = tw;
          x.push_back(c);
          parts.push_back(eigenmeasure_cylinder(s, phi, result, x));
        }
      const double dev =
          std::abs(eigenmeasure_cylinder(s, phi, result, w) - log_sum_exp(parts) - phi.at(w, 0));
      ++report.checked;
      report.max_deviation = std::max(report.max_deviation, dev);
      if (dev > tol || !std::isfinite(dev)) {
        ++report.failure_count;
        if (report.failures.size() < kKeptFailures) report.failures.emplace_back(w, dev);
      }
    }
  }
  return report;
}

double kms_beta(const Sft& s, const Potential& phi, double tol) {
  require_primitive(s);
  phi.require_total(s);
  const double floor = phi.min_value(s);
  if (!(floor > 0.0))
    refuse("potential must be strictly positive (min " + std::to_string(floor) +
           "); otherwise beta -> p(-beta phi) need not be strictly decreasing");
  auto f = [&](double beta) { return pressure(s, phi.scaled(-beta), tol); };

  double lo = 0.0;
  double f_lo = f(lo);
  if (std::abs(f_lo) <= tol) return lo;
  if (f_lo < 0.0) no_convergence("p(0) is negative; no root on [0, inf)");
  double hi = f_lo / floor;
  double f_hi = f(hi);
  if (f_hi > tol) no_convergence("bracket failure: p(-beta phi) still positive at beta = " + std::to_string(hi));

  // Bisect all the way down to adjacent doubles so the result does not
  // depend on where the tolerance happens to cut the search.
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double beta = std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
  if (std::min(std::abs(f_lo), std::abs(f_hi)) > tol) no_convergence("bisection did not reach |p| <= tol");
  return beta;
}

}  // namespace afrel

#include "afrel/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "afrel/error.hpp"
#include "afrel/logmath.hpp"

namespace afrel {

namespace {

// Boolean product of zero patterns.
std::vector<std::vector<bool>> pattern_product(const std::vector<std::vector<bool>>& x,
                                               const std::vector<std::vector<bool>>& y) {
  const std::size_t n = x.size();
  std::vector<std::vector<bool>> z(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      if (x[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (y[k][j]) z[i][j] = true;
  return z;
}

bool all_true(const std::vector<std::vector<bool>>& x) {
  return std::all_of(x.begin(), x.end(), [](const auto& row) { return std::all_of(row.begin(), row.end(), [](bool b) { return b; }); });
}

}  // namespace

bool is_primitive(const Matrix& a) {
  if (!a.is_square() || a.rows() == 0) return false;
  const std::size_t d = a.rows();
  std::vector<std::vector<bool>> base(d, std::vector<bool>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      if (a(i, j) < 0.0) return false;
      base[i][j] = a(i, j) > 0.0;
    }
  const std::size_t bound = (d - 1) * (d - 1) + 1;
  auto power = base;
  for (std::size_t m = 1; m <= bound; ++m) {
    if (all_true(power)) return true;
    power = pattern_product(power, base);
  }
  return false;
}

PerronResult solve_stationary(const Matrix& a, double tol, std::size_t max_iter) {
  if (!is_primitive(a)) refuse("matrix is not primitive; its Perron data need not be unique and power iteration may not converge");
  const PowerIteration it = power_iterate(a, tol, max_iter);
  return PerronResult{it.lambda, it.vector, it.iterations, it.residual};
}

HarmonicVector stationary_harmonic(const PerronResult& perron, int depth) {
  if (depth < 0) invalid_input("depth must be nonnegative");
  const double log_lambda = std::log(perron.lambda);
  std::vector<std::map<int, double>> log_rho(static_cast<std::size_t>(depth) + 1);
  for (int n = 0; n <= depth; ++n)
    for (std::size_t v = 0; v < perron.vector.size(); ++v)
      log_rho[static_cast<std::size_t>(n)][static_cast<int>(v) + 1] = std::log(perron.vector[v]) - n * log_lambda;
  return HarmonicVector(std::move(log_rho));
}

namespace {

void require_positive_weights(const BratteliDiagram& d, const Labelling& phi, int depth) {
  if (phi.group().kind != Group::Kind::Reals) invalid_input("Phi must be a real labelling");
  for (int n = 1; n <= depth; ++n)
    for (const Edge& e : d.edges(n))
      if (!(phi.real_at(n, e.id) > 0.0))
        invalid_input("Phi(" + std::to_string(e.id) + "@" + std::to_string(n) + ") is not positive");
}

}  // namespace

HarmonicVector solve_truncated(const BratteliDiagram& d, const Labelling& phi, int depth,
                               const std::map<int, double>& terminal) {
  if (depth < 1 || depth > d.levels())
    invalid_input("depth " + std::to_string(depth) + " outside 1.." + std::to_string(d.levels()));
  require_positive_weights(d, phi, depth);

  std::vector<std::map<int, double>> log_rho(static_cast<std::size_t>(depth) + 1);
  auto& last = log_rho.back();
  for (int v : d.vertices(depth)) {
    if (terminal.empty()) {
      last[v] = 0.0;
      continue;
    }
    auto it = terminal.find(v);
    if (it == terminal.end() || !(it->second > 0.0) || !std::isfinite(it->second))
      invalid_input("terminal condition must be positive at vertex " + std::to_string(v));
    last[v] = std::log(it->second);
  }

  for (int n = depth; n >= 1; --n) {
    const auto& below = log_rho[static_cast<std::size_t>(n)];
    auto& above = log_rho[static_cast<std::size_t>(n - 1)];
    const auto es = d.edges(n);
    for (int v : d.vertices(n - 1)) {
      std::vector<double> terms;
      for (std::size_t pos : d.out_edges(n - 1, v)) {
        auto r = below.find(es[pos].range);
        if (r == below.end()) continue;
        terms.push_back(std::log(phi.real_at(n, es[pos].id)) + r->second);
      }
      if (terms.empty()) invalid_input("vertex " + std::to_string(v) + " at level " + std::to_string(n - 1) + " has no outgoing edge");
      above[v] = log_sum_exp(terms);
    }
  }

  std::vector<double> top;
  for (const auto& [v, x] : log_rho.front()) top.push_back(x);
  const double norm = log_sum_exp(top);
  if (!std::isfinite(norm)) no_convergence("harmonic recursion left the representable range");
  for (auto& level : log_rho)
    for (auto& [v, x] : level) x -= norm;
  return HarmonicVector(std::move(log_rho));
}

double harmonic_residual(const BratteliDiagram& d, const Labelling& phi, const HarmonicVector& rho) {
  double worst = 0.0;
  for (int n = 0; n < rho.depth(); ++n) {
    const auto es = d.edges(n + 1);
    for (int v : d.vertices(n)) {
      std::vector<double> terms;
      for (std::size_t pos : d.out_edges(n, v))
        terms.push_back(std::log(phi.real_at(n + 1, es[pos].id)) + rho.log_rho(n + 1, es[pos].range));
      // |rho - sum| / rho = |1 - exp(log sum - log rho)|
      worst = std::max(worst, std::abs(std::expm1(log_sum_exp(terms) - rho.log_rho(n, v))));
    }
  }
  return worst;
}

UniquenessReport uniqueness_probe(const BratteliDiagram& d, const Labelling& phi, int depth, std::size_t trials,
                                  double tol, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> log_scale(-3.0, 3.0);
  std::vector<std::vector<double>> rho0s;
  for (std::size_t t = 0; t < trials; ++t) {
    std::map<int, double> terminal;
    for (int v : d.vertices(depth)) terminal[v] = std::exp(log_scale(rng));
    const HarmonicVector rho = solve_truncated(d, phi, depth, terminal);
    std::vector<double> top;
    for (const auto& [v, x] : rho.log_level(0)) top.push_back(std::exp(x));
    rho0s.push_back(std::move(top));
  }
  UniquenessReport report;
  report.trials = trials;
  for (std::size_t i = 0; i < rho0s.size(); ++i)
    for (std::size_t j = i + 1; j < rho0s.size(); ++j)
      for (std::size_t k = 0; k < rho0s[i].size(); ++k)
        report.max_deviation = std::max(report.max_deviation, std::abs(rho0s[i][k] - rho0s[j][k]));
  report.possibly_non_unique = report.max_deviation > tol;
  return report;
}

MarkovMeasure markov_measure_from_harmonic(const BratteliDiagram& d, const Labelling& phi, const HarmonicVector& rho) {
  const int depth = rho.depth();
  if (depth < 1 || depth > d.levels())
    invalid_input("harmonic vector depth " + std::to_string(depth) + " does not fit the diagram");
  const BratteliDiagram support = depth == d.levels() ? d : d.truncated(depth);
  require_positive_weights(support, phi, depth);
  const double residual = harmonic_residual(support, phi, rho);
  if (residual > kHarmonicTol)
    invalid_input("harmonic residual " + std::to_string(residual) + " exceeds " + std::to_string(kHarmonicTol));

  std::map<int, double> log_mu0;
  for (int v : support.vertices(0)) log_mu0[v] = rho.log_rho(0, v);
  std::vector<std::map<int, double>> log_p(static_cast<std::size_t>(depth));
  for (int n = 1; n <= depth; ++n)
    for (const Edge& e : support.edges(n))
      log_p[static_cast<std::size_t>(n - 1)][e.id] =
          std::log(phi.real_at(n, e.id)) + rho.log_rho(n, e.range) - rho.log_rho(n - 1, e.source);
  return MarkovMeasure(support, std::move(log_mu0), std::move(log_p));
}

}  // namespace afrel

// Acceptance criteria: one PASS/FAIL line each, nonzero exit on any failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "afrel/harmonic.hpp"
#include "afrel/markov.hpp"
#include "afrel/normalize.hpp"
#include "afrel/shift.hpp"
#include "afrel/suites.hpp"
#include "afrel/transfer.hpp"

using namespace afrel;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

const std::vector<Matrix>& example_matrices() {
  static const std::vector<Matrix> ms{Matrix::from_rows({{1, 1}, {1, 1}}), Matrix::from_rows({{1, 1}, {1, 0}}),
                                      Matrix::from_rows({{1, 2}, {3, 4}})};
  return ms;
}

std::vector<std::pair<Sft, Potential>> jacobian_systems() {
  std::map<Word, double> v{{{0, 0}, 0.0}, {{0, 1}, std::log(2.0)}, {{1, 0}, std::log(3.0)}, {{1, 1}, std::log(4.0)}};
  return {{Sft::full(2), Potential::constant(0.0)},
          {Sft({{1, 1}, {1, 0}}), Potential::constant(0.0)},
          {Sft::full(2), Potential(2, v)}};
}

void note(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome kms_anchor() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int d = 2; d <= 10; ++d) worst = std::max(worst, std::abs(kms_beta(Sft::full(d), Potential::constant(1.0)) - std::log(d)));
  const double t = seconds_since(t0);
  note(o, worst <= 1e-10, "max |beta - log d| = " + fmt(worst));
  note(o, t < 1.0, "runtime " + fmt(t) + " s");
  o.detail = o.pass ? "max error " + fmt(worst) + ", " + fmt(t) + " s" : o.detail;
  return o;
}

Outcome pressure_anchor() {
  Outcome o;
  double worst = 0.0;
  for (int d = 2; d <= 10; ++d) worst = std::max(worst, std::abs(pressure(Sft::full(d), Potential::constant(0.0)) - std::log(d)));
  const double golden =
      std::abs(pressure(Sft({{1, 1}, {1, 0}}), Potential::constant(0.0)) - std::log((1 + std::sqrt(5.0)) / 2));
  note(o, worst <= 1e-12, "full shifts off by " + fmt(worst));
  note(o, golden <= 1e-10, "golden mean off by " + fmt(golden));
  if (o.pass) o.detail = "full " + fmt(worst) + ", golden " + fmt(golden);
  return o;
}

Outcome round_trip() {
  Outcome o;
  const auto t0 = Clock::now();
  constexpr int kDepth = 8;
  for (const Matrix& a : example_matrices()) {
    // One level beyond the checked depth so every pair has an extension.
    const auto d = stationary_from_matrix(a, kDepth + 1);
    const Labelling phi = Labelling::from_edge_labels(d);
    const HarmonicVector rho = stationary_harmonic(solve_stationary(a), kDepth + 1);
    const MarkovMeasure m = markov_measure_from_harmonic(d, phi, rho);
    const auto qi = quasi_invariance_check(m, phi.log(), {}, kDepth, 1e-10);
    note(o, qi.ok() && qi.checked > 0, "quasi-invariance failed " + std::to_string(qi.failure_count));
    const auto back = recover_harmonic(m, phi);
    double worst = back.rho ? 0.0 : INFINITY;
    if (back.rho)
      for (int n = 0; n <= kDepth + 1; ++n)
        for (const auto& [v, lr] : rho.log_level(n)) worst = std::max(worst, std::abs(back.rho->rho(n, v) - rho.rho(n, v)));
    note(o, back.consistent && worst <= 1e-10, "recovered rho off by " + fmt(worst));
  }
  const double t = seconds_since(t0);
  note(o, t < 5.0, "runtime " + fmt(t) + " s");
  if (o.pass) o.detail = fmt(t) + " s";
  return o;
}

Outcome stationary_anchor() {
  Outcome o;
  double worst = 0.0;
  for (const Matrix& a : example_matrices()) {
    const PerronResult p = solve_stationary(a);
    const auto d = stationary_from_matrix(a, 40);
    const HarmonicVector rho = solve_truncated(d, Labelling::from_edge_labels(d), 40);
    for (int v = 1; v <= static_cast<int>(a.rows()); ++v)
      worst = std::max(worst, std::abs(rho.rho(0, v) - p.vector[static_cast<std::size_t>(v - 1)]));
  }
  note(o, worst <= 1e-8, "rho0 off by " + fmt(worst));
  if (o.pass) o.detail = "max deviation " + fmt(worst);
  return o;
}

Outcome jacobian_suite() {
  Outcome o;
  for (const auto& [s, phi] : jacobian_systems()) {
    const Potential normalized = phi.shifted(-pressure(s, phi));
    const auto rep = jacobian_check(s, normalized, leading_eigen(s, normalized), 10, 1e-9);
    note(o, rep.ok() && rep.checked > 0, "normalized system failed, max deviation " + fmt(rep.max_deviation));
    const auto raw = jacobian_check(s, phi, leading_eigen(s, phi), 10, 1e-9);
    note(o, !raw.ok(), "unnormalized negative control passed");
  }
  return o;
}

Outcome from_suite(const SuiteResult& r, double t, std::size_t min_cases) {
  Outcome o;
  note(o, r.ok(), std::to_string(r.failure_count) + " failures" + (r.failures.empty() ? "" : ": " + r.failures.front()));
  note(o, r.cases >= min_cases, "only " + std::to_string(r.cases) + " cases");
  if (o.pass) o.detail = std::to_string(r.cases) + " cases, " + fmt(t) + " s";
  return o;
}

Outcome cocycle_criterion() {
  constexpr std::size_t kInstances = 10000, kExtensions = 1000;
  const auto t0 = Clock::now();
  const SuiteResult r = cocycle_suite(0, kInstances, kExtensions);
  // Each instance is an identity case plus a coboundary case.
  return from_suite(r, seconds_since(t0), 2 * kInstances + kExtensions);
}

Outcome normalize_criterion() {
  constexpr std::size_t kChains = 200;
  const auto t0 = Clock::now();
  const SuiteResult r = normalize_suite(0, kChains);
  const double t = seconds_since(t0);
  Outcome o = from_suite(r, t, kChains);
  note(o, t < 10.0, "runtime " + fmt(t) + " s");
  return o;
}

Outcome markov_criterion() {
  const auto t0 = Clock::now();
  const SuiteResult r = markov_suite(0, 12);
  Outcome o = from_suite(r, seconds_since(t0), 1);
  const double sum = r.metrics.count("sum_deviation") ? r.metrics.at("sum_deviation") : INFINITY;
  const double add = r.metrics.count("additivity_deviation") ? r.metrics.at("additivity_deviation") : INFINITY;
  note(o, sum <= 1e-10, "sum deviation " + fmt(sum));
  note(o, add <= 1e-12, "additivity deviation " + fmt(add));
  if (o.pass) o.detail += ", sums " + fmt(sum) + ", additivity " + fmt(add);
  return o;
}

Outcome stationarity_criterion() {
  Outcome o;
  std::map<Word, double> v{{{0, 0}, 0.3}, {{0, 1}, -1.0}, {{1, 0}, 2.0}};
  const Sft golden({{1, 1}, {1, 0}});
  for (const Potential& phi : {Potential(1, {{{0}, 0.4}, {{1}, -1.3}}), Potential(2, v)}) {
    // The labelling reproduces restrict_to_tail on every tail pair, so it is
    // the tail restriction of c_phi in quasi-product form.
    const Labelling c = canonical_labelling(golden, phi, 8);
    const auto d = stationary_from_matrix(golden.matrix(), 8);
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n)
      for (const auto& pair : tail_pairs(d, n))
        worst = std::max(worst, std::abs(restrict_to_tail(golden, phi, pair) - eval_quasi_product(c, pair).real()));
    note(o, worst <= 1e-12, "labelling differs from restrict_to_tail by " + fmt(worst));
    const auto rep = stationarity_check(golden, c, phi, 8, 1e-12);
    note(o, rep.ok() && rep.checked > 0, "canonical labelling deviates by " + fmt(rep.max_deviation));
    Labelling bad = canonical_labelling(golden, phi, 8);
    const int e = StationaryDiagram::edge_id(1, 2, 2);
    bad.set(3, e, bad.real_at(3, e) + 0.5);
    note(o, !stationarity_check(golden, bad, phi, 8, 1e-12).ok(), "perturbed negative control passed");
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 KMS inverse temperature beta = log d for d = 2..10", kms_anchor},
      {"2 pressure of full shifts and the golden mean", pressure_anchor},
      {"3 harmonic measure quasi-invariance and recovery round trip", round_trip},
      {"4 truncated harmonic solve at depth 40 matches Perron data", stationary_anchor},
      {"5 Jacobian of the eigenmeasure with negative control", jacobian_suite},
      {"6 cocycle identity and tail independence on random instances", cocycle_criterion},
      {"7 normalization of 200 random quotient chains", normalize_criterion},
      {"8 Markov cylinder sums and additivity up to depth 12", markov_criterion},
      {"9 stationarity of canonical labellings with negative control", stationarity_criterion},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  %s%s%s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.empty() ? "" : "  | ",
                o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

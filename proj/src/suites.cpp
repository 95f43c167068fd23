#include "afrel/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "afrel/cocycle.hpp"
#include "afrel/diagram.hpp"
#include "afrel/error.hpp"
#include "afrel/harmonic.hpp"
#include "afrel/logmath.hpp"
#include "afrel/markov.hpp"
#include "afrel/normalize.hpp"
#include "afrel/shift.hpp"
#include "afrel/transfer.hpp"

namespace afrel {

void SuiteResult::fail(const std::string& what) {
  ++failure_count;
  if (failures.size() < 16) failures.push_back(what);
}

void SuiteResult::metric_max(const std::string& key, double value) {
  auto [it, fresh] = metrics.try_emplace(key, value);
  if (!fresh) it->second = std::max(it->second, value);
}

namespace {

using Rng = std::mt19937_64;

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << std::scientific << x;
  return out.str();
}

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(xs.size()) - 1))];
}

Matrix all_ones() { return Matrix::from_rows({{1, 1}, {1, 1}}); }
Matrix golden() { return Matrix::from_rows({{1, 1}, {1, 0}}); }
Matrix one_to_four() { return Matrix::from_rows({{1, 2}, {3, 4}}); }

struct Example {
  std::string name;
  Matrix a;
};

std::vector<Example> example_matrices() {
  return {{"all-ones", all_ones()}, {"golden-mean", golden()}, {"[[1,2],[3,4]]", one_to_four()}};
}

// Paths of a diagram grouped by terminal vertex, per depth.
struct PathTable {
  std::vector<std::map<int, std::vector<FinitePath>>> by_depth;  // index n-1

  PathTable(const BratteliDiagram& d, int max_depth) {
    for (int n = 1; n <= max_depth; ++n) {
      std::map<int, std::vector<FinitePath>> groups;
      for (auto& p : enumerate_paths(d, n)) groups[*d.terminal(p)].push_back(std::move(p));
      by_depth.push_back(std::move(groups));
    }
  }

  const std::vector<FinitePath>& random_class(Rng& rng, int n) const {
    const auto& groups = by_depth[static_cast<std::size_t>(n - 1)];
    auto it = groups.begin();
    std::advance(it, uniform_int(rng, 0, static_cast<int>(groups.size()) - 1));
    return it->second;
  }
};

GroupElement random_element(Rng& rng, const Group& g) {
  if (!g.is_exact()) return GroupElement(uniform_real(rng, -5.0, 5.0));
  std::vector<std::int64_t> v;
  for (int i = 0; i < g.rank; ++i) v.push_back(uniform_int(rng, -10, 10));
  return GroupElement(std::move(v));
}

Labelling random_labelling(Rng& rng, const BratteliDiagram& d, const Group& g) {
  Labelling f(g);
  for (int n = 1; n <= d.levels(); ++n)
    for (const Edge& e : d.edges(n)) f.set(n, e.id, random_element(rng, g));
  return f;
}

FinitePath random_extension(Rng& rng, const BratteliDiagram& d, const FinitePath& p, int extra) {
  FinitePath out = p;
  int v = *d.terminal(p);
  for (int i = 0; i < extra; ++i) {
    const int level = static_cast<int>(out.depth());
    const auto outs = d.out_edges(level, v);
    const Edge& e = d.edges(level + 1)[outs[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(outs.size()) - 1))]];
    out = out.extended(e.id);
    v = e.range;
  }
  return out;
}

bool equal_in(const Group& g, const GroupElement& x, const GroupElement& y, double tol) {
  return g.is_exact() ? x == y : approx_equal(x, y, tol);
}

}  // namespace

SuiteResult diagram_suite(std::uint64_t seed) {
  SuiteResult r;
  r.name = "diagram";
  Rng rng(seed);
  for (int trial = 0; trial < 40; ++trial) {
    const int dim = uniform_int(rng, 1, 4);
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(dim), std::vector<double>(static_cast<std::size_t>(dim)));
    for (auto& row : rows) {
      for (auto& x : row) x = uniform_int(rng, 0, 2) == 0 ? 0.0 : uniform_real(rng, 0.1, 3.0);
      if (std::all_of(row.begin(), row.end(), [](double x) { return x == 0.0; }))
        row[static_cast<std::size_t>(uniform_int(rng, 0, dim - 1))] = 1.0;
    }
    const BratteliDiagram d = stationary_from_matrix(Matrix::from_rows(rows), 4);
    ++r.cases;
    if (!validate_diagram(d).ok) r.fail("stationary diagram of a matrix without zero rows failed validation");
    for (int n = 1; n <= 4; ++n) {
      const auto paths = enumerate_paths(d, n);
      const auto pairs = tail_pairs(d, n);
      std::size_t expected = 0;
      for (const auto& [v, count] : in_path_counts(d, n)) expected += count * count;
      ++r.cases;
      if (pairs.size() != expected) r.fail("tail pair count differs from the sum of squared in-path counts");
      // Brute-force oracle: all connected edge sequences.
      std::size_t brute = 0;
      std::function<void(int, int)> walk = [&](int level, int v) {
        if (level == n) {
          ++brute;
          return;
        }
        for (const Edge& e : d.edges(level + 1))
          if (level == 0 || e.source == v) walk(level + 1, e.range);
      };
      walk(0, 0);
      ++r.cases;
      if (brute != paths.size()) r.fail("enumerate_paths count disagrees with brute force");
      if (n < 4) {
        std::set<FinitePath> prefixes;
        for (const auto& p : enumerate_paths(d, n + 1)) prefixes.insert(p.prefix(static_cast<std::size_t>(n)));
        ++r.cases;
        if (prefixes != std::set<FinitePath>(paths.begin(), paths.end()))
          r.fail("depth-" + std::to_string(n + 1) + " prefixes are not onto depth-" + std::to_string(n) + " paths");
      }
    }
  }
  return r;
}

SuiteResult cocycle_suite(std::uint64_t seed, std::size_t instances, std::size_t extensions) {
  SuiteResult r;
  r.name = "cocycle";
  Rng rng(seed);
  constexpr int kLevels = 8;
  constexpr int kMaxPairDepth = 6;
  const std::vector<BratteliDiagram> diagrams{stationary_from_matrix(all_ones(), kLevels),
                                              stationary_from_matrix(golden(), kLevels)};
  const std::vector<PathTable> tables{PathTable(diagrams[0], kMaxPairDepth), PathTable(diagrams[1], kMaxPairDepth)};
  const std::vector<Group> groups{Group::reals(), Group::lattice(1), Group::lattice(2)};

  for (std::size_t i = 0; i < instances; ++i) {
    const std::size_t which = i % 2;
    const BratteliDiagram& d = diagrams[which];
    const Group& g = groups[(i / 2) % groups.size()];
    const Labelling f = random_labelling(rng, d, g);
    const int n = uniform_int(rng, 1, kMaxPairDepth);
    const auto& cls = tables[which].random_class(rng, n);
    const FinitePath& a = pick(rng, cls);
    const FinitePath& b = pick(rng, cls);
    const FinitePath& c = pick(rng, cls);
    ++r.cases;
    const GroupElement ab = eval_quasi_product(f, {a, b});
    const GroupElement bc = eval_quasi_product(f, {b, c});
    const GroupElement ac = eval_quasi_product(f, {a, c});
    if (!g.is_exact()) r.metric_max("identity_deviation", std::abs((ab + bc - ac).real()));
    if (!check_cocycle_identity(f, d, a, b, c)) r.fail("cocycle identity fails over " + g.name());

    // Coboundary perturbation stays a cocycle.
    CoboundaryData psi{uniform_int(rng, 1, n), {}};
    for (const auto& p : enumerate_paths(d, psi.range)) psi.psi[p.edges] = random_element(rng, g);
    const CocycleEvaluator perturbed = [&](const TailPair& pair) { return apply_coboundary(f, psi, pair); };
    ++r.cases;
    if (!check_cocycle_identity(perturbed, g, d, a, b, c)) r.fail("coboundary perturbation breaks the cocycle identity");
  }

  for (std::size_t i = 0; i < extensions; ++i) {
    const std::size_t which = i % 2;
    const BratteliDiagram& d = diagrams[which];
    const Group& g = groups[i % groups.size()];
    const Labelling f = random_labelling(rng, d, g);
    const int n = uniform_int(rng, 1, kMaxPairDepth - 1);
    const auto& cls = tables[which].random_class(rng, n);
    const FinitePath& a = pick(rng, cls);
    const FinitePath& b = pick(rng, cls);
    const FinitePath aw = random_extension(rng, d, a, uniform_int(rng, 1, kLevels - n));
    FinitePath bw = b;
    bw.edges.insert(bw.edges.end(), aw.edges.begin() + n, aw.edges.end());
    ++r.cases;
    const GroupElement short_value = eval_quasi_product(f, {a, b});
    const GroupElement long_value = eval_quasi_product(f, {aw, bw});
    if (!g.is_exact()) r.metric_max("tail_deviation", std::abs((short_value - long_value).real()));
    if (!equal_in(g, short_value, long_value, 1e-12)) r.fail("cocycle value depends on the common tail");
  }
  return r;
}

namespace {

// Sum over depth-n cylinders and additivity for one measure.
void check_measure(SuiteResult& r, const std::string& name, const MarkovMeasure& m, int max_depth) {
  const BratteliDiagram& d = m.diagram();
  const int top = std::min(max_depth, d.levels());
  for (int n = 1; n <= top; ++n) {
    const auto paths = enumerate_paths(d, n);
    std::vector<double> logs;
    for (const auto& p : paths) logs.push_back(measure_cylinder(m, p));
    double total = 0.0;
    for (double x : logs) total += std::exp(x);
    ++r.cases;
    r.metric_max("sum_deviation", std::abs(total - 1.0));
    if (std::abs(total - 1.0) > 1e-10)
      r.fail(name + ": depth-" + std::to_string(n) + " cylinders sum to 1 + " + fmt(total - 1.0));
    if (n == top || n >= d.levels()) continue;
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const int v = *d.terminal(paths[i]);
      double children = 0.0;
      for (std::size_t pos : d.out_edges(n, v))
        children += std::exp(measure_cylinder(m, paths[i].extended(d.edges(n + 1)[pos].id)));
      const double parent = std::exp(logs[i]);
      const double rel = std::abs(children - parent) / parent;
      ++r.cases;
      r.metric_max("additivity_deviation", rel);
      if (rel > 1e-12) r.fail(name + ": additivity off by " + fmt(rel) + " at depth " + std::to_string(n));
    }
  }
}

MarkovMeasure random_measure(Rng& rng, const BratteliDiagram& d) {
  std::map<int, double> mu0;
  double total = 0.0;
  for (int v : d.vertices(0)) total += mu0[v] = uniform_real(rng, 0.1, 1.0);
  for (auto& [v, x] : mu0) x /= total;
  std::vector<std::map<int, double>> p(static_cast<std::size_t>(d.levels()));
  for (int n = 0; n < d.levels(); ++n)
    for (int v : d.vertices(n)) {
      const auto outs = d.out_edges(n, v);
      double sum = 0.0;
      std::vector<double> w;
      for (std::size_t k = 0; k < outs.size(); ++k) sum += w.emplace_back(uniform_real(rng, 0.1, 1.0));
      for (std::size_t k = 0; k < outs.size(); ++k)
        p[static_cast<std::size_t>(n)][d.edges(n + 1)[outs[k]].id] = w[k] / sum;
    }
  return MarkovMeasure::from_probabilities(d, mu0, p);
}

}  // namespace

SuiteResult markov_suite(std::uint64_t seed, int max_depth) {
  SuiteResult r;
  r.name = "markov";
  Rng rng(seed);
  for (const auto& ex : example_matrices()) {
    const BratteliDiagram d = stationary_from_matrix(ex.a, max_depth);
    const Labelling phi = Labelling::from_edge_labels(d);
    const HarmonicVector rho = stationary_harmonic(solve_stationary(ex.a), max_depth);
    const MarkovMeasure m = markov_measure_from_harmonic(d, phi, rho);
    check_measure(r, ex.name, m, max_depth);

    // RN derivative is a multiplicative cocycle.
    const PathTable table(d, std::min(max_depth, 6));
    for (int i = 0; i < 200; ++i) {
      const auto& cls = table.random_class(rng, uniform_int(rng, 1, std::min(max_depth, 6)));
      const FinitePath& a = pick(rng, cls);
      const FinitePath& b = pick(rng, cls);
      const FinitePath& c = pick(rng, cls);
      const double dev = std::abs(radon_nikodym(m, {a, b}) + radon_nikodym(m, {b, c}) - radon_nikodym(m, {a, c}));
      ++r.cases;
      r.metric_max("rn_identity_deviation", dev);
      if (dev > 1e-12) r.fail(ex.name + ": D(a,b) D(b,c) != D(a,c), log deviation " + fmt(dev));
    }

    const HarmonicRecovery back = recover_harmonic(m, phi);
    ++r.cases;
    if (!back.consistent || !back.rho) {
      r.fail(ex.name + ": recover_harmonic rejects a measure built from rho");
    } else {
      double worst = 0.0;
      for (int n = 0; n <= max_depth; ++n)
        for (const auto& [v, lr] : rho.log_level(n))
          if (back.rho->has(n, v)) worst = std::max(worst, std::abs(std::expm1(back.rho->log_rho(n, v) - lr)));
      r.metric_max("recovery_deviation", worst);
      if (worst > 1e-10) r.fail(ex.name + ": recovered rho off by " + fmt(worst));
    }
  }

  // Uniform Bernoulli measure and a random Markov measure on a random diagram.
  const BratteliDiagram full = stationary_from_matrix(all_ones(), max_depth);
  std::vector<std::map<int, double>> half(static_cast<std::size_t>(max_depth));
  for (int n = 1; n <= max_depth; ++n)
    for (const Edge& e : full.edges(n)) half[static_cast<std::size_t>(n - 1)][e.id] = 0.5;
  check_measure(r, "uniform", MarkovMeasure::from_probabilities(full, {{1, 0.5}, {2, 0.5}}, half), max_depth);

  std::vector<std::vector<int>> vertices;
  std::vector<std::vector<Edge>> edges;
  const int levels = std::min(max_depth, 7);
  vertices.push_back({0, 1});
  for (int n = 1; n <= levels; ++n) {
    const int width = uniform_int(rng, 1, 3);
    std::vector<int> vs(static_cast<std::size_t>(width));
    std::iota(vs.begin(), vs.end(), 0);
    std::vector<Edge> es;
    int id = 0;
    for (int v : vertices.back()) {
      const int out = uniform_int(rng, 1, 3);
      for (int k = 0; k < out; ++k) es.push_back(Edge{id++, v, uniform_int(rng, 0, width - 1), std::nullopt});
    }
    vertices.push_back(std::move(vs));
    edges.push_back(std::move(es));
  }
  const BratteliDiagram random_d(vertices, edges);
  check_measure(r, "random", random_measure(rng, random_d), max_depth);
  return r;
}

SuiteResult harmonic_suite(std::uint64_t seed) {
  SuiteResult r;
  r.name = "harmonic";
  Rng rng(seed);
  for (const auto& ex : example_matrices()) {
    const PerronResult perron = solve_stationary(ex.a);
    const BratteliDiagram d = stationary_from_matrix(ex.a, 40);
    const Labelling phi = Labelling::from_edge_labels(d);

    double deviation10 = 0.0;
    double deviation40 = 0.0;
    for (int depth : {10, 40}) {
      const HarmonicVector rho = solve_truncated(d, phi, depth);
      double dev = 0.0;
      for (std::size_t v = 0; v < perron.vector.size(); ++v)
        dev = std::max(dev, std::abs(rho.rho(0, static_cast<int>(v) + 1) - perron.vector[v]));
      (depth == 10 ? deviation10 : deviation40) = dev;
      const double res = harmonic_residual(d, phi, rho);
      ++r.cases;
      r.metric_max("harmonic_residual", res);
      if (res > 1e-10) r.fail(ex.name + ": harmonic residual " + fmt(res) + " at N=" + std::to_string(depth));
    }
    ++r.cases;
    r.metric_max("stationary_deviation_N40", deviation40);
    if (deviation40 > 1e-8) r.fail(ex.name + ": N=40 rho0 differs from the Perron vector by " + fmt(deviation40));
    // When the uniform terminal is already the Perron vector both deviations
    // are rounding noise and there is nothing to decrease.
    const bool decreasing = deviation10 > 1e-12 ? deviation40 < deviation10 : deviation40 <= 1e-12;
    if (!decreasing || deviation40 >= 1e-6)
      r.fail(ex.name + ": truncated solutions do not approach the stationary one");

    // Forward and converse directions.
    const BratteliDiagram d9 = stationary_from_matrix(ex.a, 9);
    const Labelling phi9 = Labelling::from_edge_labels(d9);
    const HarmonicVector rho9 = stationary_harmonic(perron, 9);
    const MarkovMeasure m = markov_measure_from_harmonic(d9, phi9, rho9);
    const auto qi = quasi_invariance_check(m, phi9.log(), {}, 8, 1e-10);
    r.cases += qi.checked;
    r.metric_max("quasi_invariance_deviation", qi.max_deviation);
    if (!qi.ok()) r.fail(ex.name + ": quasi-invariance fails on " + std::to_string(qi.failure_count) + " pairs");

    const UniquenessReport probe = uniqueness_probe(d, phi, 40, 5, 1e-8, rng());
    ++r.cases;
    if (probe.possibly_non_unique) r.fail(ex.name + ": primitive diagram flagged as possibly non-unique");
  }

  // Two disjoint copies of the all-ones diagram admit two extreme solutions.
  const Matrix twin = Matrix::from_rows({{1, 1, 0, 0}, {1, 1, 0, 0}, {0, 0, 1, 1}, {0, 0, 1, 1}});
  const BratteliDiagram dd = stationary_from_matrix(twin, 20);
  const UniquenessReport split = uniqueness_probe(dd, Labelling::from_edge_labels(dd), 20, 5, 1e-8, rng());
  ++r.cases;
  if (!split.possibly_non_unique) r.fail("disjoint union not flagged as possibly non-unique");
  return r;
}

namespace {

struct System {
  std::string name;
  Sft sft;
  Potential phi;
};

Potential range2(const std::vector<std::vector<double>>& table) {
  std::map<Word, double> values;
  for (std::size_t a = 0; a < table.size(); ++a)
    for (std::size_t b = 0; b < table[a].size(); ++b)
      values[{static_cast<int>(a), static_cast<int>(b)}] = table[a][b];
  return Potential(2, std::move(values));
}

std::vector<System> jacobian_systems() {
  return {{"full 2-shift, phi = 0", Sft::full(2), Potential::constant(0.0)},
          {"golden-mean, phi = 0", Sft({{1, 1}, {1, 0}}), Potential::constant(0.0)},
          {"full 2-shift, range-2 phi", Sft::full(2),
           range2({{std::log(1.0), std::log(2.0)}, {std::log(3.0), std::log(4.0)}})}};
}

}  // namespace

SuiteResult transfer_suite(std::uint64_t seed) {
  SuiteResult r;
  r.name = "transfer";
  Rng rng(seed);
  for (const auto& sys : jacobian_systems()) {
    const double p = pressure(sys.sft, sys.phi);
    const Potential normalized = sys.phi.shifted(-p);
    const TransferResult eig = leading_eigen(sys.sft, normalized);
    ++r.cases;
    r.metric_max("eigen_residual", std::max(eig.residual_h, eig.residual_nu));
    if (eig.residual_h > 1e-10 || eig.residual_nu > 1e-10) r.fail(sys.name + ": eigen residual above 1e-10");

    const JacobianReport jac = jacobian_check(sys.sft, normalized, eig, 10, 1e-9);
    r.cases += jac.checked;
    r.metric_max("jacobian_deviation", jac.max_deviation);
    if (!jac.ok()) r.fail(sys.name + ": normalized Jacobian check fails");

    if (std::abs(p) > 1e-6) {
      const JacobianReport raw = jacobian_check(sys.sft, sys.phi, leading_eigen(sys.sft, sys.phi), 10, 1e-9);
      ++r.cases;
      if (raw.ok()) r.fail(sys.name + ": unnormalized potential passes the Jacobian check");
    }

    // Eigenmeasure is a probability measure at every depth.
    for (int m = static_cast<int>(eig.index_length()); m <= 12; ++m) {
      std::vector<double> logs;
      for (const auto& w : sys.sft.words(static_cast<std::size_t>(m)))
        logs.push_back(eigenmeasure_cylinder(sys.sft, normalized, eig, w));
      const double dev = std::abs(std::exp(log_sum_exp(logs)) - 1.0);
      ++r.cases;
      r.metric_max("eigenmeasure_sum_deviation", dev);
      if (dev > 1e-10) r.fail(sys.name + ": eigenmeasure of " + std::to_string(m) + "-words sums to 1 + " + fmt(dev));
    }

    // Duality <M f, nu> = lambda <f, nu>.
    const TransferMatrix tm = build_transfer_matrix(sys.sft, normalized);
    for (int i = 0; i < 20; ++i) {
      std::vector<double> f(tm.index.size());
      for (auto& x : f) x = uniform_real(rng, -1.0, 1.0);
      const auto mf = tm.matrix.apply(f);
      double lhs = 0.0, rhs = 0.0, norm = 0.0;
      for (std::size_t k = 0; k < f.size(); ++k) {
        lhs += mf[k] * eig.nu[k];
        rhs += eig.lambda * f[k] * eig.nu[k];
        norm = std::max(norm, std::abs(f[k]));
      }
      ++r.cases;
      r.metric_max("duality_deviation", std::abs(lhs - rhs) / norm);
      if (std::abs(lhs - rhs) > 1e-9 * norm) r.fail(sys.name + ": nu is not a left eigenvector");
    }

    for (double c : {-1.0, 0.5, 3.0}) {
      const double dev = std::abs(pressure(sys.sft, sys.phi.shifted(c)) - (p + c));
      ++r.cases;
      r.metric_max("constant_shift_deviation", dev);
      if (dev > 1e-10) r.fail(sys.name + ": p(phi + c) != p(phi) + c");
    }

    // Same function written with one more coordinate.
    const Potential wider = sys.phi.with_range(sys.sft, std::max(sys.phi.range(), 1) + 1);
    const double pw = pressure(sys.sft, wider);
    const TransferResult eig_w = leading_eigen(sys.sft, wider.shifted(-pw));
    double dev = std::abs(pw - p);
    for (const auto& w : sys.sft.words(6))
      dev = std::max(dev, std::abs(std::exp(eigenmeasure_cylinder(sys.sft, wider.shifted(-pw), eig_w, w)) -
                                   std::exp(eigenmeasure_cylinder(sys.sft, normalized, eig, w))));
    ++r.cases;
    r.metric_max("range_consistency_deviation", dev);
    if (dev > 1e-10) r.fail(sys.name + ": re-expressing the range changes outputs by " + fmt(dev));
  }

  // Convexity and monotonicity of beta -> p(-beta phi) for phi > 0.
  const std::vector<System> positive{
      {"full 2-shift, phi = 1", Sft::full(2), Potential::constant(1.0)},
      {"golden-mean, range-2 phi > 0", Sft({{1, 1}, {1, 0}}), range2({{0.5, 1.0}, {1.5, 2.0}})},
      {"full 3-shift, range-2 phi > 0", Sft::full(3), range2({{0.2, 1.0, 0.7}, {1.3, 0.4, 0.9}, {2.0, 0.6, 1.1}})}};
  for (const auto& sys : positive) {
    std::vector<double> values;
    for (int i = 0; i <= 10; ++i) values.push_back(pressure(sys.sft, sys.phi.scaled(-0.2 * i)));
    for (std::size_t i = 1; i < values.size(); ++i) {
      ++r.cases;
      if (!(values[i] < values[i - 1])) r.fail(sys.name + ": p(-beta phi) not strictly decreasing");
    }
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
      ++r.cases;
      const double second = values[i + 1] - 2 * values[i] + values[i - 1];
      if (second < -1e-9) r.fail(sys.name + ": p(-beta phi) not convex");
    }
    const double beta = kms_beta(sys.sft, sys.phi);
    const double at_root = std::abs(pressure(sys.sft, sys.phi.scaled(-beta)));
    ++r.cases;
    r.metric_max("kms_residual", at_root);
    if (at_root > 1e-10) r.fail(sys.name + ": p(-beta phi) = " + fmt(at_root) + " at the KMS root");
  }
  return r;
}

namespace {

Word random_admissible(Rng& rng, const Sft& s, std::size_t length) {
  Word w{uniform_int(rng, 0, s.alphabet() - 1)};
  while (w.size() < length) {
    std::vector<int> next;
    for (int b = 0; b < s.alphabet(); ++b)
      if (s.allowed(w.back(), b)) next.push_back(b);
    w.push_back(pick(rng, next));
  }
  return w;
}

// Random word a with a followed by `tail` admissible.
Word random_head(Rng& rng, const Sft& s, std::size_t length, const Word& tail) {
  for (;;) {
    Word a;
    for (std::size_t i = 0; i < length; ++i) a.push_back(uniform_int(rng, 0, s.alphabet() - 1));
    Word x = a;
    x.insert(x.end(), tail.begin(), tail.end());
    if (s.admissible(x)) return a;
  }
}

}  // namespace

SuiteResult shift_suite(std::uint64_t seed) {
  SuiteResult r;
  r.name = "shift";
  Rng rng(seed);
  for (const auto& sys : jacobian_systems()) {
    const auto stub_need = static_cast<std::size_t>(sys.phi.range() - 1);
    // Cocycle identity and lag additivity on composable pairs of G(X,T).
    for (int i = 0; i < 500; ++i) {
      const Word y = random_admissible(rng, sys.sft, 14);
      const auto p1 = static_cast<std::size_t>(uniform_int(rng, 0, 4));
      const auto p2 = static_cast<std::size_t>(uniform_int(rng, 0, 4));
      const Word tail1(y.begin() + static_cast<std::ptrdiff_t>(p1), y.end());
      const Word tail2(y.begin() + static_cast<std::ptrdiff_t>(p2), y.end());
      const LagElement g1{random_head(rng, sys.sft, static_cast<std::size_t>(uniform_int(rng, 0, 4)), tail1),
                          Word(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(p1)), tail1};
      const LagElement g2{Word(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(p2)),
                          random_head(rng, sys.sft, static_cast<std::size_t>(uniform_int(rng, 0, 4)), tail2), tail2};
      const LagElement g = compose(g1, g2);
      if (g.tail_stub.size() < stub_need) continue;
      const double dev = std::abs(c_phi_eval(sys.sft, sys.phi, g1) + c_phi_eval(sys.sft, sys.phi, g2) -
                                  c_phi_eval(sys.sft, sys.phi, g));
      ++r.cases;
      r.metric_max("groupoid_identity_deviation", dev);
      if (dev > 1e-12) r.fail(sys.name + ": c_phi(g1) + c_phi(g2) != c_phi(g1 g2)");
      if (g1.lag() + g2.lag() != g.lag()) r.fail(sys.name + ": lag is not additive");
    }

    // Restriction to R agrees with the canonical quasi-product labelling.
    constexpr int kDepth = 8;
    const Labelling canon = canonical_labelling(sys.sft, sys.phi, kDepth);
    const BratteliDiagram d = stationary_from_matrix(sys.sft.matrix(), kDepth);
    double worst = 0.0;
    for (int n = 1; n <= kDepth; ++n) {
      std::map<int, std::vector<FinitePath>> groups;
      for (auto& p : enumerate_paths(d, n)) groups[*d.terminal(p)].push_back(std::move(p));
      for (const auto& [v, cls] : groups)
        for (const auto& a : cls)
          for (const auto& b : cls) {
            const double dev =
                std::abs(restrict_to_tail(sys.sft, sys.phi, {a, b}) - eval_quasi_product(canon, {a, b}).real());
            ++r.cases;
            worst = std::max(worst, dev);
            if (dev > 1e-12) r.fail(sys.name + ": restriction disagrees with the canonical labelling");
          }
    }
    r.metric_max("restriction_deviation", worst);

    const StationarityReport st = stationarity_check(sys.sft, canon, sys.phi, 6, 1e-12);
    r.cases += st.checked;
    if (!st.ok()) r.fail(sys.name + ": canonical labelling fails the stationarity check");

    // Level-dependent perturbation must be caught.
    Labelling bent = canon;
    for (const auto& [key, value] : canon.values())
      bent.set(key.first, key.second, value.real() + 0.25 * key.first * (key.second + 1));
    const StationarityReport neg = stationarity_check(sys.sft, bent, sys.phi, 6, 1e-12);
    ++r.cases;
    if (neg.ok()) r.fail(sys.name + ": level-dependent labelling passes the stationarity check");
  }
  return r;
}

namespace {

QuotientChain random_chain(Rng& rng) {
  QuotientChain chain;
  const int n_maps = uniform_int(rng, 1, 4);
  chain.sizes.push_back(uniform_int(rng, 1, 12));
  for (int n = 0; n < n_maps; ++n) {
    const int from = chain.sizes.back();
    const int to = uniform_int(rng, 1, from);
    std::vector<int> images(static_cast<std::size_t>(from));
    std::vector<int> order(static_cast<std::size_t>(from));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int k = 0; k < from; ++k)
      images[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k < to ? k : uniform_int(rng, 0, to - 1);
    chain.maps.push_back(std::move(images));
    chain.sizes.push_back(to);
  }
  return chain;
}

}  // namespace

SuiteResult normalize_suite(std::uint64_t seed, std::size_t chains) {
  SuiteResult r;
  r.name = "normalize";
  Rng rng(seed);
  for (std::size_t i = 0; i < chains; ++i) {
    const QuotientChain chain = random_chain(rng);
    FinitelyValuedCocycleData data{Group::lattice(1), {}};
    for (int j = 0; j < chain.length(); ++j) {
      std::vector<GroupElement> values;
      for (int x = 0; x < chain.sizes[static_cast<std::size_t>(j)]; ++x)
        values.emplace_back(std::vector<std::int64_t>{uniform_int(rng, -3, 3)});
      data.bprime.push_back(std::move(values));
    }
    const Normalization norm = refine_for_cocycle(chain, data);
    ++r.cases;
    const auto bad = tower_violations(chain, norm.tower);
    if (!bad.empty()) r.fail("chain " + std::to_string(i) + ": tower invariant violated: " + bad.front());
    if (!validate_diagram(norm.diagram).ok) r.fail("chain " + std::to_string(i) + ": tower diagram fails validation");

    // Points of S_0 correspond to (path, point of the terminal vertex block).
    std::size_t weighted = 0;
    const auto& last = norm.tower.partitions.back();
    for (const auto& p : enumerate_paths(norm.diagram, chain.length()))
      weighted += last[static_cast<std::size_t>(p.edges.back())].size();
    if (weighted != static_cast<std::size_t>(chain.sizes[0]))
      r.fail("chain " + std::to_string(i) + ": paths weighted by terminal block size do not count S_0");

    const NormalizationReport rep = verify_normalization(chain, norm.tower, norm.labelling, data, chain.length());
    r.metrics["pairs_checked"] += static_cast<double>(rep.pairs_checked);
    if (!rep.ok()) r.fail("chain " + std::to_string(i) + ": " + rep.failures.front());
  }
  return r;
}

std::vector<std::string> suite_names() {
  return {"diagram", "cocycle", "markov", "harmonic", "transfer", "shift", "normalize"};
}

SuiteResult run_suite(const std::string& name, std::uint64_t seed) {
  if (name == "diagram") return diagram_suite(seed);
  if (name == "cocycle") return cocycle_suite(seed);
  if (name == "markov") return markov_suite(seed);
  if (name == "harmonic") return harmonic_suite(seed);
  if (name == "transfer") return transfer_suite(seed);
  if (name == "shift") return shift_suite(seed);
  if (name == "normalize") return normalize_suite(seed);
  std::string known;
  for (const auto& n : suite_names()) known += (known.empty() ? "" : ", ") + n;
  invalid_input("unknown suite \"" + name + "\" (known: " + known + ")");
}

}  // namespace afrel

#include "afrel/markov.hpp"

#include <algorithm>
#include <cmath>

#include "afrel/error.hpp"
#include "afrel/logmath.hpp"

namespace afrel {

HarmonicVector::HarmonicVector(std::vector<std::map<int, double>> log_rho) : log_rho_(std::move(log_rho)) {
  if (log_rho_.empty()) invalid_input("harmonic vector needs at least level 0");
}

const std::map<int, double>& HarmonicVector::log_level(int n) const {
  if (n < 0 || n > depth()) invalid_input("harmonic vector has no level " + std::to_string(n));
  return log_rho_[static_cast<std::size_t>(n)];
}

bool HarmonicVector::has(int n, int vertex) const {
  return n >= 0 && n <= depth() && log_rho_[static_cast<std::size_t>(n)].count(vertex) != 0;
}

double HarmonicVector::log_rho(int n, int vertex) const {
  const auto& level = log_level(n);
  auto it = level.find(vertex);
  if (it == level.end())
    invalid_input("harmonic vector undefined at vertex " + std::to_string(vertex) + " of level " + std::to_string(n));
  return it->second;
}

double HarmonicVector::rho(int n, int vertex) const { return std::exp(log_rho(n, vertex)); }

MarkovMeasure::MarkovMeasure(BratteliDiagram d, std::map<int, double> log_mu0, std::vector<std::map<int, double>> log_p)
    : diagram_(std::move(d)), log_mu0_(std::move(log_mu0)), log_p_(std::move(log_p)) {
  const int L = diagram_.levels();
  if (log_p_.size() != static_cast<std::size_t>(L))
    invalid_input("transition probabilities given for " + std::to_string(log_p_.size()) + " levels, diagram has " +
                  std::to_string(L));
  std::vector<double> initial;
  for (int v : diagram_.vertices(0)) {
    auto it = log_mu0_.find(v);
    if (it == log_mu0_.end() || !std::isfinite(it->second))
      invalid_input("initial distribution must be positive on vertex " + std::to_string(v));
    initial.push_back(it->second);
  }
  if (log_mu0_.size() != initial.size()) invalid_input("initial distribution names a vertex outside V(0)");
  if (std::abs(std::exp(log_sum_exp(initial)) - 1.0) > kStochasticTol)
    invalid_input("initial distribution does not sum to 1");

  for (int n = 1; n <= L; ++n) {
    const auto& level = log_p_[static_cast<std::size_t>(n - 1)];
    for (const Edge& e : diagram_.edges(n)) {
      auto it = level.find(e.id);
      if (it == level.end() || !std::isfinite(it->second) || it->second > 1e-12)
        invalid_input("transition probability of edge " + std::to_string(e.id) + "@" + std::to_string(n) +
                      " must lie in (0,1]");
    }
    if (level.size() != diagram_.edges(n).size())
      invalid_input("transition probabilities name an edge outside E(" + std::to_string(n) + ")");
    for (int v : diagram_.vertices(n - 1)) {
      double total = 0.0;
      for (std::size_t pos : diagram_.out_edges(n - 1, v)) total += std::exp(level.at(diagram_.edges(n)[pos].id));
      if (std::abs(total - 1.0) > kStochasticTol)
        invalid_input("transition probabilities out of vertex " + std::to_string(v) + " at level " +
                      std::to_string(n - 1) + " sum to " + std::to_string(total));
    }
  }
}

MarkovMeasure MarkovMeasure::from_probabilities(BratteliDiagram d, const std::map<int, double>& mu0,
                                                const std::vector<std::map<int, double>>& p) {
  auto take_log = [](double x, const std::string& what) {
    if (!(x > 0.0) || !std::isfinite(x)) invalid_input(what + " must be positive");
    return std::log(x);
  };
  std::map<int, double> log_mu0;
  for (const auto& [v, x] : mu0) log_mu0[v] = take_log(x, "initial probability of vertex " + std::to_string(v));
  std::vector<std::map<int, double>> log_p(p.size());
  for (std::size_t n = 0; n < p.size(); ++n)
    for (const auto& [id, x] : p[n])
      log_p[n][id] = take_log(x, "transition probability of edge " + std::to_string(id) + "@" + std::to_string(n + 1));
  return MarkovMeasure(std::move(d), std::move(log_mu0), std::move(log_p));
}

double MarkovMeasure::log_mu0(int vertex) const {
  auto it = log_mu0_.find(vertex);
  if (it == log_mu0_.end()) invalid_input("vertex " + std::to_string(vertex) + " not in V(0)");
  return it->second;
}

double MarkovMeasure::log_p(int level, int edge_id) const {
  if (level < 1 || level > diagram_.levels()) invalid_input("level " + std::to_string(level) + " outside the diagram");
  const auto& m = log_p_[static_cast<std::size_t>(level - 1)];
  auto it = m.find(edge_id);
  if (it == m.end()) invalid_input("no edge " + std::to_string(edge_id) + "@" + std::to_string(level));
  return it->second;
}

double measure_cylinder(const MarkovMeasure& m, const FinitePath& path) {
  if (!m.diagram().is_path(path)) invalid_input("cylinder path is not a connected path of the diagram");
  double acc = m.log_mu0(m.diagram().find_edge(1, path.edges.front())->source);
  for (std::size_t i = 0; i < path.depth(); ++i) acc += m.log_p(static_cast<int>(i) + 1, path.edges[i]);
  return acc;
}

double radon_nikodym(const MarkovMeasure& m, const TailPair& pair) {
  if (!m.diagram().is_tail_pair(pair)) invalid_input("not a tail pair of the measure's diagram");
  // Level-by-level differences, so a common suffix contributes exactly 0.
  const auto& d = m.diagram();
  double acc = m.log_mu0(d.find_edge(1, pair.a.edges.front())->source) -
               m.log_mu0(d.find_edge(1, pair.b.edges.front())->source);
  for (std::size_t i = 0; i < pair.a.depth(); ++i) {
    if (pair.a.edges[i] == pair.b.edges[i]) continue;
    const int level = static_cast<int>(i) + 1;
    acc += m.log_p(level, pair.a.edges[i]) - m.log_p(level, pair.b.edges[i]);
  }
  return acc;
}

QuasiInvarianceReport quasi_invariance_check(const MarkovMeasure& m, const Labelling& log_phi,
                                             const std::map<int, double>& log_initial_weights, int depth,
                                             double tol) {
  const auto& d = m.diagram();
  if (depth < 1 || depth > d.levels() - 1)
    invalid_input("quasi-invariance depth " + std::to_string(depth) + " outside 1.." + std::to_string(d.levels() - 1));
  auto weight = [&](int v) {
    auto it = log_initial_weights.find(v);
    return it == log_initial_weights.end() ? 0.0 : it->second;
  };
  constexpr std::size_t kKeptFailures = 16;

  QuasiInvarianceReport report;
  for (int t = 1; t <= depth; ++t) {
    const auto paths = enumerate_paths(d, t);
    std::map<int, std::vector<std::size_t>> by_terminal;
    // ext[i] lists (edge id, log mu(Z(a_i w))) for each continuation w.
    std::vector<std::vector<std::pair<int, double>>> ext(paths.size());
    for (std::size_t i = 0; i < paths.size(); ++i) {
      const int v = *d.terminal(paths[i]);
      by_terminal[v].push_back(i);
      for (std::size_t pos : d.out_edges(t, v)) {
        const int w = d.edges(t + 1)[pos].id;
        ext[i].emplace_back(w, measure_cylinder(m, paths[i].extended(w)));
      }
    }
    for (const auto& [v, members] : by_terminal) {
      for (std::size_t ia : members) {
        for (std::size_t ib : members) {
          const TailPair pair{paths[ia], paths[ib]};
          const double log_d = eval_quasi_product(log_phi, pair).real() +
                               weight(d.find_edge(1, pair.a.edges.front())->source) -
                               weight(d.find_edge(1, pair.b.edges.front())->source);
          for (std::size_t k = 0; k < ext[ia].size(); ++k) {
            const double dev = std::abs(ext[ia][k].second - ext[ib][k].second - log_d);
            ++report.checked;
            report.max_deviation = std::max(report.max_deviation, dev);
            if (dev > tol || !std::isfinite(dev)) {
              ++report.failure_count;
              if (report.failures.size() < kKeptFailures)
                report.failures.push_back(QuasiInvarianceFailure{pair, ext[ia][k].first, dev});
            }
          }
        }
      }
    }
  }
  return report;
}

HarmonicRecovery recover_harmonic(const MarkovMeasure& m, const Labelling& phi, double rel_tol) {
  const auto& d = m.diagram();
  const Labelling log_phi = phi.log();
  HarmonicRecovery out;

  // lo/hi of log(mu(Z(a)) / Phi(a)) over paths a ending at each vertex.
  std::map<int, std::pair<double, double>> range;
  for (int v : d.vertices(0)) range[v] = {m.log_mu0(v), m.log_mu0(v)};
  std::vector<std::map<int, double>> log_rho;
  auto close_level = [&](int n) {
    std::map<int, double> level;
    for (const auto& [v, lohi] : range) {
      const double spread = lohi.second - lohi.first;
      out.max_log_spread = std::max(out.max_log_spread, spread);
      if (std::expm1(spread) > rel_tol) {
        out.consistent = false;
        out.inconsistencies.push_back("mu(Z(a))/Phi(a) varies by relative " + std::to_string(std::expm1(spread)) +
                                      " over paths ending at vertex " + std::to_string(v) + " of level " +
                                      std::to_string(n));
      }
      level[v] = 0.5 * (lohi.first + lohi.second);
    }
    log_rho.push_back(std::move(level));
  };
  close_level(0);
  for (int n = 1; n <= d.levels(); ++n) {
    std::map<int, std::pair<double, double>> next;
    for (const Edge& e : d.edges(n)) {
      auto src = range.find(e.source);
      if (src == range.end()) continue;
      const double step = m.log_p(n, e.id) - log_phi.real_at(n, e.id);
      const double lo = src->second.first + step;
      const double hi = src->second.second + step;
      auto [it, fresh] = next.try_emplace(e.range, lo, hi);
      if (!fresh) {
        it->second.first = std::min(it->second.first, lo);
        it->second.second = std::max(it->second.second, hi);
      }
    }
    range = std::move(next);
    close_level(n);
  }
  if (out.consistent) out.rho = HarmonicVector(std::move(log_rho));
  return out;
}

}  // namespace afrel

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "afrel/cocycle.hpp"
#include "afrel/diagram.hpp"
#include "afrel/harmonic_vector.hpp"

namespace afrel {

inline constexpr double kStochasticTol = 1e-12;

// Markov measure on the path space: initial distribution mu0 on V(0) and
// transition probabilities p on edges, both kept as natural logs.
//
// Construction enforces mu0 > 0 on every vertex of V(0), p > 0 on every
// edge, sum mu0 = 1 and sum_{s(e)=v} p(e) = 1 for v in V(n-1), n <= L, each
// within kStochasticTol. Zero-probability edges must be removed from the
// diagram instead.
class MarkovMeasure {
 public:
  MarkovMeasure(BratteliDiagram d, std::map<int, double> log_mu0, std::vector<std::map<int, double>> log_p);

  // Same, from plain probabilities. p[n-1] maps edge ids of E(n).
  static MarkovMeasure from_probabilities(BratteliDiagram d, const std::map<int, double>& mu0,
                                          const std::vector<std::map<int, double>>& p);

  const BratteliDiagram& diagram() const noexcept { return diagram_; }
  double log_mu0(int vertex) const;
  double log_p(int level, int edge_id) const;
  const std::map<int, double>& log_initial() const noexcept { return log_mu0_; }
  const std::vector<std::map<int, double>>& log_transitions() const noexcept { return log_p_; }

 private:
  BratteliDiagram diagram_;
  std::map<int, double> log_mu0_;
  std::vector<std::map<int, double>> log_p_;
};

// log mu(Z(x1...xn)) = log mu0(s(x1)) + sum_i log p_i(x_i).
double measure_cylinder(const MarkovMeasure& m, const FinitePath& path);

// log D(az, bz) = log mu(Z(a)) - log mu(Z(b)).
double radon_nikodym(const MarkovMeasure& m, const TailPair& pair);

struct QuasiInvarianceFailure {
  TailPair pair;
  int extension = 0;  // edge id of the one-level common extension w
  double deviation = 0.0;
};

struct QuasiInvarianceReport {
  std::size_t checked = 0;
  std::size_t failure_count = 0;
  double max_deviation = 0.0;
  std::vector<QuasiInvarianceFailure> failures;  // first few only

  bool ok() const noexcept { return failure_count == 0; }
};

// For every tail pair (a,b) of depth 1..depth and every edge w continuing
// r(a), compares log mu(Z(aw)) - log mu(Z(bw)) with the candidate
// log D(a,b) = c_{log Phi}(a,b) + w0(s(a1)) - w0(s(b1)), where w0 holds
// optional log initial-vertex weights (absent entries count as 0).
// Requires depth <= L - 1.
QuasiInvarianceReport quasi_invariance_check(const MarkovMeasure& m, const Labelling& log_phi,
                                             const std::map<int, double>& log_initial_weights, int depth, double tol);

struct HarmonicRecovery {
  bool consistent = true;
  std::optional<HarmonicVector> rho;  // set when consistent
  double max_log_spread = 0.0;        // worst max - min of log(mu(Z(a))/Phi(a)) at one vertex
  std::vector<std::string> inconsistencies;
};

// Converse direction of the RN characterization: mu(Z(a)) / Phi(a) must
// depend only on r(a). The extreme values of that ratio over all paths into
// each vertex are propagated level by level, so the test covers every path
// without enumerating them. Agreement within relative 1e-9 gives rho.
HarmonicRecovery recover_harmonic(const MarkovMeasure& m, const Labelling& phi, double rel_tol = 1e-9);

}  // namespace afrel

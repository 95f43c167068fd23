#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "afrel/cocycle.hpp"
#include "afrel/diagram.hpp"
#include "afrel/harmonic_vector.hpp"
#include "afrel/markov.hpp"
#include "afrel/matrix.hpp"

namespace afrel {

inline constexpr double kHarmonicTol = 1e-10;

// Perron data of a primitive matrix: A v = lambda v, v > 0, sum v = 1.
struct PerronResult {
  double lambda = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
  double residual = 0.0;
};

// True iff some power A^m with m <= (d-1)^2 + 1 is entrywise positive.
bool is_primitive(const Matrix& a);

// Power iteration from the uniform vector. Refuses non-primitive input.
PerronResult solve_stationary(const Matrix& a, double tol = 1e-12, std::size_t max_iter = 100000);

// rho_n = lambda^-n rho0 on the stationary diagram (vertex ids 1..d), levels 0..depth.
HarmonicVector stationary_harmonic(const PerronResult& perron, int depth);

// Backward recursion rho_{n-1}(v) = sum_{s(e)=v} Phi(e) rho_n(r(e)) from
// rho_N = terminal (uniform when empty), carried out in log space, then one
// common rescaling of all levels so that sum over V(0) of rho0 is 1.
HarmonicVector solve_truncated(const BratteliDiagram& d, const Labelling& phi, int depth,
                               const std::map<int, double>& terminal = {});

// max over n < N, v in V(n) of |rho_n(v) - sum_{s(e)=v} Phi(e) rho_{n+1}(r(e))| / rho_n(v).
double harmonic_residual(const BratteliDiagram& d, const Labelling& phi, const HarmonicVector& rho);

struct UniquenessReport {
  std::size_t trials = 0;
  double max_deviation = 0.0;  // max pairwise sup-norm distance between the rho0's
  bool possibly_non_unique = false;
};

// Solves with `trials` random positive terminal conditions and compares the
// resulting rho0. Only ever reports; a small deviation does not prove
// uniqueness.
UniquenessReport uniqueness_probe(const BratteliDiagram& d, const Labelling& phi, int depth, std::size_t trials,
                                  double tol, std::uint64_t seed = 0);

// mu0 = rho0 and p_n(e) = Phi_n(e) rho_n(r(e)) / rho_{n-1}(s(e)). The measure
// lives on the diagram truncated to rho's depth. Throws InvalidInput when
// the harmonic residual exceeds kHarmonicTol.
MarkovMeasure markov_measure_from_harmonic(const BratteliDiagram& d, const Labelling& phi, const HarmonicVector& rho);

}  // namespace afrel

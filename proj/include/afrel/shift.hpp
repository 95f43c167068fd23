#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "afrel/cocycle.hpp"
#include "afrel/diagram.hpp"
#include "afrel/transfer.hpp"

namespace afrel {

// (a z, |a| - |b|, b z) in G(X,T), where z is any admissible continuation
// of tail_stub. The stub must hold at least range - 1 symbols for the
// potential at hand.
struct LagElement {
  Word a;
  Word b;
  Word tail_stub;

  int lag() const noexcept { return static_cast<int>(a.size()) - static_cast<int>(b.size()); }
};

// c_phi(g) = sum_{i<m} phi(T^i x) - sum_{j<n} phi(T^j y), x = a z, y = b z.
double c_phi_eval(const Sft& s, const Potential& phi, const LagElement& g);

// g1 g2 for (x, k1, y) and (y, k2, w). Both representations of y are
// aligned on a common prefix; throws InvalidInput when they disagree.
LagElement compose(const LagElement& g1, const LagElement& g2);

// Symbols (0-based) of the vertices v0..vn visited by a path of the
// stationary diagram of s.
Word path_symbols(const BratteliDiagram& stationary, const FinitePath& path);

// c_phi on the lag-0 element represented by a tail pair of the stationary
// diagram of s. The terminal vertex starts the tail stub; `extension`
// supplies further tail symbols when the range needs them.
double restrict_to_tail(const Sft& s, const Potential& phi, const TailPair& pair, const Word& extension = {});

// Labelling of the stationary diagram whose quasi-product cocycle is
// c_phi restricted to the tail relation: edge (v,w) carries phi(v) for
// range 1, phi(v w) for range 2. Longer ranges are not edge-local.
Labelling canonical_labelling(const Sft& s, const Potential& phi, int levels);

struct StationarityReport {
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t failure_count = 0;
  double max_deviation = 0.0;
  std::vector<std::string> failures;  // first few only

  bool ok() const noexcept { return failure_count == 0; }
};

// For tail pairs (a,b) of depth 2..depth on the stationary diagram of s,
// tests c(a,b) - c(Ta,Tb) = phi(a) - phi(b), (Ta,Tb) dropping the first
// edges. Pairs of depth 1, pairs whose shift is not a tail pair, and pairs
// too short for phi's window are skipped. Can refute extendability of c to
// G(X,T), never certify it.
StationarityReport stationarity_check(const Sft& s, const Labelling& c, const Potential& phi, int depth, double tol);

}  // namespace afrel

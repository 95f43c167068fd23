#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "afrel/cocycle.hpp"
#include "afrel/diagram.hpp"

namespace afrel {

// Finite model of X = X_0 -> X_1 -> ... -> X_N: sets S_n = {0..sizes[n]-1}
// and surjections q_n = maps[n-1] : S_{n-1} -> S_n.
struct QuotientChain {
  std::vector<int> sizes;
  std::vector<std::vector<int>> maps;

  int length() const noexcept { return static_cast<int>(maps.size()); }
  // Throws InvalidInput unless every q_n is total and surjective.
  void validate() const;
  int image(int n, int x) const;        // q_n(x), x in S_{n-1}
  int project(int n, int x0) const;     // q_n o ... o q_1 (x0), x0 in S_0
};

using Block = std::vector<int>;         // sorted
using Partition = std::vector<Block>;   // blocks ordered by their minimal element

// partitions[n-1] = P_n, a partition of S_{n-1}.
struct Tower {
  std::vector<Partition> partitions;
};

// Every violated tower invariant (cover, q_n-sections, equal-or-disjoint
// images, refinement of (q_{n-1})_* P_{n-1}, and of the constraints when
// given). Empty means valid.
std::vector<std::string> tower_violations(const QuotientChain& chain, const Tower& tower,
                                          const std::vector<std::optional<Partition>>& constraints = {});

// Greedy tower: classes of S_{n-1} are the common refinement of
// (q_{n-1})_* P_{n-1} and the optional constraint Q_n; points of S_n whose
// fibers meet the classes with identical multiplicities are grouped, and
// the i-th element (by id) of each fiber within a class forms block i.
Tower build_tower(const QuotientChain& chain, const std::vector<std::optional<Partition>>& constraints = {});

// V(0) is a single root; V(n) = (q_n)_* P_n; E(n) = P_n with source the
// V(n-1) block containing the edge and range its q_n-image. Ids are block
// positions. Throws InvalidInput on an invalid tower.
BratteliDiagram tower_to_diagram(const QuotientChain& chain, const Tower& tower);

// Depth-N path of x0 in S_0: at level n, the P_n block containing
// q_{n-1} o ... o q_1 (x0).
FinitePath tower_address(const QuotientChain& chain, const Tower& tower, int x0);

// b'_j : S_j -> A for j = 0..N-1. The cocycle is c(x,y) = b_m(x) - b_m(y)
// on the fibers of q_m o ... o q_1, with b_m(x) = sum_{j<m} b'_j(x_j).
struct FinitelyValuedCocycleData {
  Group group = Group::reals();
  std::vector<std::vector<GroupElement>> bprime;

  void validate(const QuotientChain& chain) const;
};

// b_m(x0) as above.
GroupElement cocycle_potential(const QuotientChain& chain, const FinitelyValuedCocycleData& data, int m, int x0);

struct Normalization {
  Tower tower;
  BratteliDiagram diagram;
  Labelling labelling;
};

// Constrains P_n by the level sets of b'_{n-1}, builds the tower, and
// labels each edge by the (then constant) value of b'_{n-1} on it.
Normalization refine_for_cocycle(const QuotientChain& chain, const FinitelyValuedCocycleData& data);

struct NormalizationReport {
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return failures.empty(); }
};

// Brute force over S_0 for levels m = 1..n: (i) the tail relation of the
// tower diagram at depth m, pulled back through addresses and computed by
// union-find, equals the fiber partition of q_m o ... o q_1; (ii) on each
// such fiber the quasi-product cocycle of the labelling equals the
// b_m-difference (exact for lattices, 1e-12 for reals). n = 0 is vacuous.
NormalizationReport verify_normalization(const QuotientChain& chain, const Tower& tower, const Labelling& labelling,
                                         const FinitelyValuedCocycleData& data, int n);

}  // namespace afrel

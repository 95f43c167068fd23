#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afrel/matrix.hpp"

namespace afrel {

// Edge of E(n): source in V(n-1), range in V(n). The optional label is an
// attached weight (for stationary diagrams, the matrix entry A[v,w]).
struct Edge {
  int id = 0;
  int source = 0;
  int range = 0;
  std::optional<double> label;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Edge ids x1 ... xn, xi in E(i). Identifies the cylinder Z(x1...xn); the
// initial vertex is the source of x1.
struct FinitePath {
  std::vector<int> edges;

  std::size_t depth() const noexcept { return edges.size(); }
  FinitePath prefix(std::size_t n) const;
  FinitePath extended(int edge_id) const;

  friend auto operator<=>(const FinitePath&, const FinitePath&) = default;
};

// Stands for every pair (az, bz) of the tail relation with a common
// continuation z. Validity (equal depth, common terminal vertex) is checked
// against a diagram with BratteliDiagram::is_tail_pair.
struct TailPair {
  FinitePath a;
  FinitePath b;

  friend auto operator<=>(const TailPair&, const TailPair&) = default;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Bratteli diagram truncated at depth L: vertex sets V(0..L) and edge sets
// E(1..L). Immutable; copies share storage.
class BratteliDiagram {
 public:
  // Vertices and edges are sorted by id. Throws InvalidInput only on shape
  // errors (L < 1, or vertex/edge level counts disagree); invariant
  // violations are reported by validate_diagram.
  BratteliDiagram(std::vector<std::vector<int>> vertices, std::vector<std::vector<Edge>> edges);

  int levels() const noexcept;
  std::span<const int> vertices(int n) const;
  std::span<const Edge> edges(int n) const;
  bool has_vertex(int n, int id) const;
  const Edge* find_edge(int n, int id) const;

  // Positions within edges(n + 1) of the edges leaving `vertex` in V(n),
  // ordered by edge id.
  std::span<const std::size_t> out_edges(int n, int vertex) const;

  // Terminal vertex of a connected path starting at level 0, or nullopt.
  std::optional<int> terminal(const FinitePath& path) const;
  bool is_path(const FinitePath& path) const { return path.depth() >= 1 && terminal(path).has_value(); }
  bool is_tail_pair(const TailPair& pair) const;

  // v0, v1, ..., vn along a valid path.
  std::vector<int> vertex_sequence(const FinitePath& path) const;

  BratteliDiagram truncated(int levels) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

// Generator for the stationary diagram of a d x d nonnegative matrix:
// V(n) = {1..d} and E(n) holds (v,w) iff A[v,w] > 0, labelled A[v,w], at
// every level. Storage is the matrix only; truncate() materializes levels.
class StationaryDiagram {
 public:
  explicit StationaryDiagram(Matrix a);

  std::size_t dimension() const noexcept { return a_.rows(); }
  const Matrix& matrix() const noexcept { return a_; }

  std::vector<int> vertices(int n) const;
  std::vector<Edge> edges(int n) const;
  BratteliDiagram truncate(int levels) const;

  // Edge (v,w), vertices 1-based, has id (v-1)*d + (w-1).
  static int edge_id(int v, int w, std::size_t d) { return (v - 1) * static_cast<int>(d) + (w - 1); }

 private:
  Matrix a_;
};

ValidationReport validate_diagram(const BratteliDiagram& d);

// Throws InvalidInput for negative entries or a zero row (dead vertex).
BratteliDiagram stationary_from_matrix(const Matrix& a, int levels);

// All depth-n paths in lexicographic order of edge ids.
std::vector<FinitePath> enumerate_paths(const BratteliDiagram& d, int n);

// All ordered pairs of depth-n paths with a common terminal vertex,
// diagonal included, ordered by (a, b).
std::vector<TailPair> tail_pairs(const BratteliDiagram& d, int n);

// Number of depth-n paths ending at each vertex of V(n).
std::map<int, std::size_t> in_path_counts(const BratteliDiagram& d, int n);

}  // namespace afrel

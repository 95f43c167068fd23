#include "afrel/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "afrel/error.hpp"

namespace afrel {

FinitePath FinitePath::prefix(std::size_t n) const {
  if (n > edges.size()) invalid_input("prefix longer than path");
  return FinitePath{std::vector<int>(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(n))};
}

FinitePath FinitePath::extended(int edge_id) const {
  FinitePath out = *this;
  out.edges.push_back(edge_id);
  return out;
}

struct BratteliDiagram::Impl {
  std::vector<std::vector<int>> vertices;  // levels 0..L
  std::vector<std::vector<Edge>> edges;    // index n-1 holds E(n)
  // out[n][vertex] = positions in edges[n] (i.e. E(n+1)) with that source.
  std::vector<std::map<int, std::vector<std::size_t>>> out;
};

namespace {

void check_level(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi)
    invalid_input(std::string(what) + " level " + std::to_string(n) + " outside " + std::to_string(lo) + ".." +
                  std::to_string(hi));
}

const std::vector<std::size_t> kNoEdges;

}  // namespace

BratteliDiagram::BratteliDiagram(std::vector<std::vector<int>> vertices, std::vector<std::vector<Edge>> edges) {
  if (edges.empty()) invalid_input("diagram needs at least one level of edges");
  if (vertices.size() != edges.size() + 1)
    invalid_input("diagram with " + std::to_string(edges.size()) + " edge levels needs " +
                  std::to_string(edges.size() + 1) + " vertex levels, got " + std::to_string(vertices.size()));
  auto impl = std::make_shared<Impl>();
  for (auto& level : vertices) std::sort(level.begin(), level.end());
  for (auto& level : edges)
    std::stable_sort(level.begin(), level.end(), [](const Edge& x, const Edge& y) { return x.id < y.id; });
  impl->out.resize(edges.size());
  for (std::size_t n = 0; n < edges.size(); ++n)
    for (std::size_t pos = 0; pos < edges[n].size(); ++pos) impl->out[n][edges[n][pos].source].push_back(pos);
  impl->vertices = std::move(vertices);
  impl->edges = std::move(edges);
  impl_ = std::move(impl);
}

int BratteliDiagram::levels() const noexcept { return static_cast<int>(impl_->edges.size()); }

std::span<const int> BratteliDiagram::vertices(int n) const {
  check_level(n, 0, levels(), "vertex");
  return impl_->vertices[static_cast<std::size_t>(n)];
}

std::span<const Edge> BratteliDiagram::edges(int n) const {
  check_level(n, 1, levels(), "edge");
  return impl_->edges[static_cast<std::size_t>(n - 1)];
}

bool BratteliDiagram::has_vertex(int n, int id) const {
  if (n < 0 || n > levels()) return false;
  const auto& vs = impl_->vertices[static_cast<std::size_t>(n)];
  return std::binary_search(vs.begin(), vs.end(), id);
}

const Edge* BratteliDiagram::find_edge(int n, int id) const {
  if (n < 1 || n > levels()) return nullptr;
  const auto& es = impl_->edges[static_cast<std::size_t>(n - 1)];
  auto it = std::lower_bound(es.begin(), es.end(), id, [](const Edge& e, int key) { return e.id < key; });
  return (it != es.end() && it->id == id) ? &*it : nullptr;
}

std::span<const std::size_t> BratteliDiagram::out_edges(int n, int vertex) const {
  check_level(n, 0, levels() - 1, "source");
  const auto& m = impl_->out[static_cast<std::size_t>(n)];
  auto it = m.find(vertex);
  return it == m.end() ? std::span<const std::size_t>(kNoEdges) : std::span<const std::size_t>(it->second);
}

std::optional<int> BratteliDiagram::terminal(const FinitePath& path) const {
  if (path.depth() == 0 || path.depth() > static_cast<std::size_t>(levels())) return std::nullopt;
  std::optional<int> at;
  for (std::size_t i = 0; i < path.depth(); ++i) {
    const Edge* e = find_edge(static_cast<int>(i) + 1, path.edges[i]);
    if (e == nullptr) return std::nullopt;
    if (at.has_value() ? e->source != *at : !has_vertex(0, e->source)) return std::nullopt;
    at = e->range;
  }
  if (!has_vertex(static_cast<int>(path.depth()), *at)) return std::nullopt;
  return at;
}

bool BratteliDiagram::is_tail_pair(const TailPair& pair) const {
  if (pair.a.depth() != pair.b.depth()) return false;
  const auto ta = terminal(pair.a);
  const auto tb = terminal(pair.b);
  return ta.has_value() && tb.has_value() && *ta == *tb;
}

std::vector<int> BratteliDiagram::vertex_sequence(const FinitePath& path) const {
  if (!is_path(path)) invalid_input("not a connected path of the diagram");
  std::vector<int> out;
  out.reserve(path.depth() + 1);
  out.push_back(find_edge(1, path.edges.front())->source);
  for (std::size_t i = 0; i < path.depth(); ++i) out.push_back(find_edge(static_cast<int>(i) + 1, path.edges[i])->range);
  return out;
}

BratteliDiagram BratteliDiagram::truncated(int new_levels) const {
  check_level(new_levels, 1, levels(), "truncation");
  std::vector<std::vector<int>> vs(impl_->vertices.begin(), impl_->vertices.begin() + new_levels + 1);
  std::vector<std::vector<Edge>> es(impl_->edges.begin(), impl_->edges.begin() + new_levels);
  return BratteliDiagram(std::move(vs), std::move(es));
}

StationaryDiagram::StationaryDiagram(Matrix a) : a_(std::move(a)) {
  if (!a_.is_square() || a_.rows() == 0) invalid_input("stationary diagram needs a nonempty square matrix");
  for (std::size_t v = 0; v < a_.rows(); ++v) {
    bool any = false;
    for (std::size_t w = 0; w < a_.cols(); ++w) {
      if (a_(v, w) < 0.0 || !std::isfinite(a_(v, w))) invalid_input("matrix entries must be finite and nonnegative");
      any = any || a_(v, w) > 0.0;
    }
    if (!any) invalid_input("matrix row " + std::to_string(v + 1) + " is zero: vertex " + std::to_string(v + 1) +
                            " would have no outgoing edge");
  }
}

std::vector<int> StationaryDiagram::vertices(int) const {
  std::vector<int> out(dimension());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = static_cast<int>(v) + 1;
  return out;
}

std::vector<Edge> StationaryDiagram::edges(int) const {
  const std::size_t d = dimension();
  std::vector<Edge> out;
  for (std::size_t v = 0; v < d; ++v)
    for (std::size_t w = 0; w < d; ++w)
      if (a_(v, w) > 0.0) {
        const int sv = static_cast<int>(v) + 1;
        const int sw = static_cast<int>(w) + 1;
        out.push_back(Edge{edge_id(sv, sw, d), sv, sw, a_(v, w)});
      }
  return out;
}

BratteliDiagram StationaryDiagram::truncate(int levels) const {
  if (levels < 1) invalid_input("depth must be at least 1");
  std::vector<std::vector<int>> vs;
  std::vector<std::vector<Edge>> es;
  for (int n = 0; n <= levels; ++n) vs.push_back(vertices(n));
  for (int n = 1; n <= levels; ++n) es.push_back(edges(n));
  return BratteliDiagram(std::move(vs), std::move(es));
}

BratteliDiagram stationary_from_matrix(const Matrix& a, int levels) { return StationaryDiagram(a).truncate(levels); }

ValidationReport validate_diagram(const BratteliDiagram& d) {
  ValidationReport report;
  auto violate = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };
  const int L = d.levels();
  for (int n = 0; n <= L; ++n) {
    const auto vs = d.vertices(n);
    if (vs.empty()) violate("empty level: V(" + std::to_string(n) + ") has no vertices");
    for (std::size_t i = 1; i < vs.size(); ++i)
      if (vs[i] == vs[i - 1]) violate("duplicate vertex id " + std::to_string(vs[i]) + " at level " + std::to_string(n));
    for (int v : vs)
      if (v < 0) violate("negative vertex id " + std::to_string(v) + " at level " + std::to_string(n));
  }
  for (int n = 1; n <= L; ++n) {
    const auto es = d.edges(n);
    for (std::size_t i = 0; i < es.size(); ++i) {
      const Edge& e = es[i];
      const std::string where = "edge " + std::to_string(e.id) + " at level " + std::to_string(n);
      if (i > 0 && es[i - 1].id == e.id) violate("duplicate edge id: " + where);
      if (e.id < 0) violate("negative edge id: " + where);
      if (!d.has_vertex(n - 1, e.source))
        violate("dangling edge: " + where + " has source " + std::to_string(e.source) + " not in V(" +
                std::to_string(n - 1) + ")");
      if (!d.has_vertex(n, e.range))
        violate("dangling edge: " + where + " has range " + std::to_string(e.range) + " not in V(" +
                std::to_string(n) + ")");
    }
  }
  for (int n = 0; n < L; ++n)
    for (int v : d.vertices(n))
      if (d.out_edges(n, v).empty())
        violate("dead vertex: vertex " + std::to_string(v) + " at level " + std::to_string(n) +
                " has no outgoing edge in E(" + std::to_string(n + 1) + ")");
  return report;
}

namespace {

void require_depth(const BratteliDiagram& d, int n) {
  if (n < 1 || n > d.levels())
    invalid_input("depth " + std::to_string(n) + " outside 1.." + std::to_string(d.levels()));
}

void extend_paths(const BratteliDiagram& d, int n, int level, int at, std::vector<int>& stack,
                  std::vector<FinitePath>& out) {
  if (level == n) {
    out.push_back(FinitePath{stack});
    return;
  }
  const auto es = d.edges(level + 1);
  for (std::size_t pos : d.out_edges(level, at)) {
    if (!d.has_vertex(level + 1, es[pos].range)) continue;
    stack.push_back(es[pos].id);
    extend_paths(d, n, level + 1, es[pos].range, stack, out);
    stack.pop_back();
  }
}

}  // namespace

std::vector<FinitePath> enumerate_paths(const BratteliDiagram& d, int n) {
  require_depth(d, n);
  std::vector<FinitePath> out;
  std::vector<int> stack;
  // Level-1 edges in id order keep the output lexicographic.
  for (const Edge& e : d.edges(1)) {
    if (!d.has_vertex(0, e.source) || !d.has_vertex(1, e.range)) continue;
    stack.push_back(e.id);
    extend_paths(d, n, 1, e.range, stack, out);
    stack.pop_back();
  }
  return out;
}

std::vector<TailPair> tail_pairs(const BratteliDiagram& d, int n) {
  const auto paths = enumerate_paths(d, n);
  std::map<int, std::vector<const FinitePath*>> by_terminal;
  for (const auto& p : paths) by_terminal[*d.terminal(p)].push_back(&p);
  std::vector<TailPair> out;
  for (const auto& p : paths)
    for (const FinitePath* q : by_terminal[*d.terminal(p)]) out.push_back(TailPair{p, *q});
  return out;
}

std::map<int, std::size_t> in_path_counts(const BratteliDiagram& d, int n) {
  require_depth(d, n);
  std::map<int, std::size_t> count;
  for (int v : d.vertices(0)) count[v] = 1;
  for (int level = 1; level <= n; ++level) {
    std::map<int, std::size_t> next;
    for (int v : d.vertices(level)) next[v] = 0;
    for (const Edge& e : d.edges(level)) {
      auto src = count.find(e.source);
      auto dst = next.find(e.range);
      if (src != count.end() && dst != next.end()) dst->second += src->second;
    }
    count = std::move(next);
  }
  return count;
}

}  // namespace afrel

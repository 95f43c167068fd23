#include "afrel/normalize.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "afrel/error.hpp"

namespace afrel {

void QuotientChain::validate() const {
  if (sizes.size() != maps.size() + 1)
    invalid_input("chain with " + std::to_string(maps.size()) + " maps needs " + std::to_string(maps.size() + 1) +
                  " set sizes");
  for (int s : sizes)
    if (s < 1) invalid_input("chain sets must be nonempty");
  for (std::size_t n = 0; n < maps.size(); ++n) {
    if (maps[n].size() != static_cast<std::size_t>(sizes[n]))
      invalid_input("map q_" + std::to_string(n + 1) + " must give an image for each of the " +
                    std::to_string(sizes[n]) + " elements");
    std::vector<bool> hit(static_cast<std::size_t>(sizes[n + 1]), false);
    for (int y : maps[n]) {
      if (y < 0 || y >= sizes[n + 1]) invalid_input("map q_" + std::to_string(n + 1) + " leaves its target set");
      hit[static_cast<std::size_t>(y)] = true;
    }
    if (std::find(hit.begin(), hit.end(), false) != hit.end())
      invalid_input("map q_" + std::to_string(n + 1) + " is not surjective");
  }
}

int QuotientChain::image(int n, int x) const { return maps.at(static_cast<std::size_t>(n - 1)).at(static_cast<std::size_t>(x)); }

int QuotientChain::project(int n, int x0) const {
  int x = x0;
  for (int j = 1; j <= n; ++j) x = image(j, x);
  return x;
}

namespace {

// element -> index of its block; -1 when uncovered. Returns false on overlap
// or out-of-range elements.
bool membership(const Partition& p, int size, std::vector<int>& out) {
  out.assign(static_cast<std::size_t>(size), -1);
  for (std::size_t b = 0; b < p.size(); ++b)
    for (int x : p[b]) {
      if (x < 0 || x >= size || out[static_cast<std::size_t>(x)] != -1) return false;
      out[static_cast<std::size_t>(x)] = static_cast<int>(b);
    }
  return true;
}

void canonicalize(Partition& p) {
  for (auto& b : p) std::sort(b.begin(), b.end());
  std::sort(p.begin(), p.end(), [](const Block& x, const Block& y) { return x.front() < y.front(); });
}

// (q_n)_* P as a partition of S_n.
Partition pushforward(const QuotientChain& chain, int n, const Partition& p) {
  std::set<Block> images;
  for (const Block& b : p) {
    Block img;
    for (int x : b) img.push_back(chain.image(n, x));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    images.insert(std::move(img));
  }
  Partition out(images.begin(), images.end());
  canonicalize(out);
  return out;
}

Partition whole(int size) {
  Block b(static_cast<std::size_t>(size));
  std::iota(b.begin(), b.end(), 0);
  return {b};
}

}  // namespace

std::vector<std::string> tower_violations(const QuotientChain& chain, const Tower& tower,
                                          const std::vector<std::optional<Partition>>& constraints) {
  chain.validate();
  std::vector<std::string> bad;
  const int N = chain.length();
  if (tower.partitions.size() != static_cast<std::size_t>(N)) {
    bad.push_back("tower has " + std::to_string(tower.partitions.size()) + " partitions, chain has " +
                  std::to_string(N) + " maps");
    return bad;
  }
  Partition previous = whole(chain.sizes[0]);  // (q_0)_* P_0: the root
  for (int n = 1; n <= N; ++n) {
    const std::string level = "P_" + std::to_string(n);
    const Partition& p = tower.partitions[static_cast<std::size_t>(n - 1)];
    const int size = chain.sizes[static_cast<std::size_t>(n - 1)];
    std::vector<int> member;
    if (!membership(p, size, member) || std::find(member.begin(), member.end(), -1) != member.end()) {
      bad.push_back(level + " is not a partition of S_" + std::to_string(n - 1));
      return bad;
    }
    std::map<int, Block> image_of_point_owner;  // y -> image set of the block covering y
    for (const Block& b : p) {
      if (b.empty()) {
        bad.push_back(level + " has an empty block");
        continue;
      }
      Block img;
      for (int x : b) img.push_back(chain.image(n, x));
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end())
        bad.push_back(level + " block starting at " + std::to_string(b.front()) + " is not a q_" + std::to_string(n) +
                      "-section");
      img.erase(std::unique(img.begin(), img.end()), img.end());
      for (int y : img) {
        auto [it, fresh] = image_of_point_owner.try_emplace(y, img);
        if (!fresh && it->second != img) {
          bad.push_back(level + " has blocks whose q_" + std::to_string(n) + "-images overlap without being equal");
          break;
        }
      }
    }
    std::vector<int> prev_member;
    membership(previous, size, prev_member);
    for (const Block& b : p)
      for (int x : b)
        if (prev_member[static_cast<std::size_t>(x)] != prev_member[static_cast<std::size_t>(b.front())]) {
          bad.push_back(level + " does not refine the pushforward of P_" + std::to_string(n - 1));
          break;
        }
    if (static_cast<std::size_t>(n - 1) < constraints.size() && constraints[static_cast<std::size_t>(n - 1)]) {
      std::vector<int> cm;
      if (!membership(*constraints[static_cast<std::size_t>(n - 1)], size, cm)) {
        bad.push_back("constraint Q_" + std::to_string(n) + " is not a partition");
      } else {
        for (const Block& b : p)
          for (int x : b)
            if (cm[static_cast<std::size_t>(x)] != cm[static_cast<std::size_t>(b.front())]) {
              bad.push_back(level + " does not refine the constraint Q_" + std::to_string(n));
              break;
            }
      }
    }
    if (!bad.empty()) return bad;
    previous = pushforward(chain, n, p);
  }
  return bad;
}

Tower build_tower(const QuotientChain& chain, const std::vector<std::optional<Partition>>& constraints) {
  chain.validate();
  const int N = chain.length();
  Tower tower;
  Partition previous = whole(chain.sizes[0]);
  for (int n = 1; n <= N; ++n) {
    const int size = chain.sizes[static_cast<std::size_t>(n - 1)];
    const int target = chain.sizes[static_cast<std::size_t>(n)];
    std::vector<int> prev_member;
    membership(previous, size, prev_member);
    std::vector<int> constraint_member(static_cast<std::size_t>(size), 0);
    if (static_cast<std::size_t>(n - 1) < constraints.size() && constraints[static_cast<std::size_t>(n - 1)]) {
      if (!membership(*constraints[static_cast<std::size_t>(n - 1)], size, constraint_member) ||
          std::find(constraint_member.begin(), constraint_member.end(), -1) != constraint_member.end())
        invalid_input("constraint Q_" + std::to_string(n) + " is not a partition of S_" + std::to_string(n - 1));
    }
    auto cls = [&](int x) {
      return std::pair{prev_member[static_cast<std::size_t>(x)], constraint_member[static_cast<std::size_t>(x)]};
    };

    // fiber[y][class] = elements of q_n^{-1}(y) in that class, ascending.
    std::vector<std::map<std::pair<int, int>, std::vector<int>>> fiber(static_cast<std::size_t>(target));
    for (int x = 0; x < size; ++x) fiber[static_cast<std::size_t>(chain.image(n, x))][cls(x)].push_back(x);

    // Points of S_n with the same class multiplicities share blocks.
    std::map<std::vector<std::pair<std::pair<int, int>, std::size_t>>, std::vector<int>> groups;
    for (int y = 0; y < target; ++y) {
      std::vector<std::pair<std::pair<int, int>, std::size_t>> signature;
      for (const auto& [c, xs] : fiber[static_cast<std::size_t>(y)]) signature.emplace_back(c, xs.size());
      groups[signature].push_back(y);
    }
    Partition p;
    for (const auto& [signature, ys] : groups)
      for (const auto& [c, count] : signature)
        for (std::size_t i = 0; i < count; ++i) {
          Block b;
          for (int y : ys) b.push_back(fiber[static_cast<std::size_t>(y)][c][i]);
          p.push_back(std::move(b));
        }
    canonicalize(p);
    previous = pushforward(chain, n, p);
    tower.partitions.push_back(std::move(p));
  }
  return tower;
}

BratteliDiagram tower_to_diagram(const QuotientChain& chain, const Tower& tower) {
  const auto bad = tower_violations(chain, tower);
  if (!bad.empty()) invalid_input("invalid tower: " + bad.front());
  const int N = chain.length();
  std::vector<std::vector<int>> vertices{{0}};
  std::vector<std::vector<Edge>> edges;
  std::vector<int> source_member(static_cast<std::size_t>(chain.sizes[0]), 0);
  for (int n = 1; n <= N; ++n) {
    const Partition& p = tower.partitions[static_cast<std::size_t>(n - 1)];
    const Partition next = pushforward(chain, n, p);
    std::vector<int> range_member;
    membership(next, chain.sizes[static_cast<std::size_t>(n)], range_member);
    std::vector<int> level(next.size());
    std::iota(level.begin(), level.end(), 0);
    vertices.push_back(std::move(level));
    std::vector<Edge> es;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const int x = p[i].front();
      es.push_back(Edge{static_cast<int>(i), source_member[static_cast<std::size_t>(x)],
                        range_member[static_cast<std::size_t>(chain.image(n, x))], std::nullopt});
    }
    edges.push_back(std::move(es));
    source_member = std::move(range_member);
  }
  return BratteliDiagram(std::move(vertices), std::move(edges));
}

FinitePath tower_address(const QuotientChain& chain, const Tower& tower, int x0) {
  FinitePath path;
  int x = x0;
  for (int n = 1; n <= chain.length(); ++n) {
    const Partition& p = tower.partitions.at(static_cast<std::size_t>(n - 1));
    int found = -1;
    for (std::size_t b = 0; b < p.size() && found < 0; ++b)
      if (std::binary_search(p[b].begin(), p[b].end(), x)) found = static_cast<int>(b);
    if (found < 0) invalid_input("tower does not cover element " + std::to_string(x) + " of S_" + std::to_string(n - 1));
    path.edges.push_back(found);
    x = chain.image(n, x);
  }
  return path;
}

void FinitelyValuedCocycleData::validate(const QuotientChain& chain) const {
  if (bprime.size() != static_cast<std::size_t>(chain.length()))
    invalid_input("cocycle data needs one b' map per set S_0..S_{N-1} (" + std::to_string(chain.length()) + "), got " +
                  std::to_string(bprime.size()));
  for (std::size_t j = 0; j < bprime.size(); ++j) {
    if (bprime[j].size() != static_cast<std::size_t>(chain.sizes[j]))
      invalid_input("b'_" + std::to_string(j) + " must be defined on all of S_" + std::to_string(j));
    for (const auto& v : bprime[j])
      if (!v.belongs_to(group)) invalid_input("b'_" + std::to_string(j) + " takes a value outside " + group.name());
  }
}

GroupElement cocycle_potential(const QuotientChain& chain, const FinitelyValuedCocycleData& data, int m, int x0) {
  GroupElement acc = GroupElement::zero(data.group);
  int x = x0;
  for (int j = 0; j < m; ++j) {
    acc += data.bprime.at(static_cast<std::size_t>(j)).at(static_cast<std::size_t>(x));
    x = chain.image(j + 1, x);
  }
  return acc;
}

Normalization refine_for_cocycle(const QuotientChain& chain, const FinitelyValuedCocycleData& data) {
  chain.validate();
  data.validate(chain);
  std::vector<std::optional<Partition>> constraints;
  for (const auto& values : data.bprime) {
    std::map<GroupElement, Block> level_sets;
    for (std::size_t x = 0; x < values.size(); ++x) level_sets[values[x]].push_back(static_cast<int>(x));
    Partition q;
    for (auto& [v, b] : level_sets) q.push_back(std::move(b));
    canonicalize(q);
    constraints.emplace_back(std::move(q));
  }
  Tower tower = build_tower(chain, constraints);
  BratteliDiagram diagram = tower_to_diagram(chain, tower);
  Labelling labelling(data.group);
  for (int n = 1; n <= chain.length(); ++n) {
    const Partition& p = tower.partitions[static_cast<std::size_t>(n - 1)];
    for (std::size_t i = 0; i < p.size(); ++i)
      labelling.set(n, static_cast<int>(i), data.bprime[static_cast<std::size_t>(n - 1)][static_cast<std::size_t>(p[i].front())]);
  }
  return Normalization{std::move(tower), std::move(diagram), std::move(labelling)};
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); }
};

}  // namespace

NormalizationReport verify_normalization(const QuotientChain& chain, const Tower& tower, const Labelling& labelling,
                                         const FinitelyValuedCocycleData& data, int n) {
  NormalizationReport report;
  if (n == 0) return report;
  chain.validate();
  data.validate(chain);
  const int N = chain.length();
  if (n < 0 || n > N) invalid_input("verification depth " + std::to_string(n) + " outside 0.." + std::to_string(N));
  const auto bad = tower_violations(chain, tower);
  if (!bad.empty()) {
    report.failures = bad;
    return report;
  }
  const BratteliDiagram d = tower_to_diagram(chain, tower);
  const int size = chain.sizes[0];

  // The truncated diagram stops at level N; the point of S_N stands in for
  // the rest of the infinite path.
  std::vector<FinitePath> address;
  std::vector<int> tail;
  for (int x = 0; x < size; ++x) {
    address.push_back(tower_address(chain, tower, x));
    tail.push_back(chain.project(N, x));
    if (!d.is_path(address.back())) report.failures.push_back("address of " + std::to_string(x) + " is not a path");
  }
  if (!report.ok()) return report;

  for (int m = 1; m <= n; ++m) {
    UnionFind orbits(size);
    for (int x = 0; x < size; ++x)
      for (int y = x + 1; y < size; ++y) {
        const auto& ax = address[static_cast<std::size_t>(x)].edges;
        const auto& ay = address[static_cast<std::size_t>(y)].edges;
        if (tail[static_cast<std::size_t>(x)] == tail[static_cast<std::size_t>(y)] &&
            std::equal(ax.begin() + m, ax.end(), ay.begin() + m))
          orbits.unite(x, y);
      }
    for (int x = 0; x < size; ++x)
      for (int y = x + 1; y < size; ++y) {
        const bool same_fiber = chain.project(m, x) == chain.project(m, y);
        if ((orbits.find(x) == orbits.find(y)) != same_fiber) {
          report.failures.push_back("level " + std::to_string(m) + ": orbit partition differs from the fiber partition at (" +
                                    std::to_string(x) + "," + std::to_string(y) + ")");
          continue;
        }
        if (!same_fiber) continue;
        ++report.pairs_checked;
        const GroupElement quasi =
            eval_quasi_product(labelling, TailPair{address[static_cast<std::size_t>(x)], address[static_cast<std::size_t>(y)]});
        const GroupElement expected = cocycle_potential(chain, data, m, x) - cocycle_potential(chain, data, m, y);
        const bool equal = data.group.is_exact() ? quasi == expected : approx_equal(quasi, expected, 1e-12);
        if (!equal)
          report.failures.push_back("level " + std::to_string(m) + ": cocycle at (" + std::to_string(x) + "," +
                                    std::to_string(y) + ") is " + quasi.to_string() + ", data gives " +
                                    expected.to_string());
      }
  }
  return report;
}

}  // namespace afrel

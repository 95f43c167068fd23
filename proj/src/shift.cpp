#include "afrel/shift.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "afrel/error.hpp"

namespace afrel {

namespace {

Word concat(const Word& x, const Word& y) {
  Word out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

double orbit_sum(const Potential& phi, const Word& x, std::size_t terms) {
  double acc = 0.0;
  for (std::size_t i = 0; i < terms; ++i) acc += phi.at(x, i);
  return acc;
}

BratteliDiagram stationary_of(const Sft& s, int levels) { return stationary_from_matrix(s.matrix(), levels); }

}  // namespace

double c_phi_eval(const Sft& s, const Potential& phi, const LagElement& g) {
  const auto need = static_cast<std::size_t>(phi.range() - 1);
  if (g.tail_stub.size() < need)
    invalid_input("tail stub of length " + std::to_string(g.tail_stub.size()) + " is too short for a range-" +
                  std::to_string(phi.range()) + " potential");
  const Word x = concat(g.a, g.tail_stub);
  const Word y = concat(g.b, g.tail_stub);
  if (!s.admissible(x) || !s.admissible(y)) invalid_input("inadmissible concatenation with the tail stub");
  if (g.a == g.b) return 0.0;
  return orbit_sum(phi, x, g.a.size()) - orbit_sum(phi, y, g.b.size());
}

LagElement compose(const LagElement& g1, const LagElement& g2) {
  // Known prefixes of y from each side.
  const Word y1 = concat(g1.b, g1.tail_stub);
  const Word y2 = concat(g2.a, g2.tail_stub);
  const std::size_t common = std::min(y1.size(), y2.size());
  if (!std::equal(y1.begin(), y1.begin() + static_cast<std::ptrdiff_t>(common), y2.begin()))
    invalid_input("elements are not composable: middle points differ");
  const Word& y = y1.size() >= y2.size() ? y1 : y2;
  const std::size_t p = std::max(g1.b.size(), g2.a.size());
  // Move y[|b1|, p) into g1's heads and y[|a2|, p) into g2's.
  Word a = g1.a;
  a.insert(a.end(), y.begin() + static_cast<std::ptrdiff_t>(g1.b.size()), y.begin() + static_cast<std::ptrdiff_t>(p));
  Word c = g2.b;
  c.insert(c.end(), y.begin() + static_cast<std::ptrdiff_t>(g2.a.size()), y.begin() + static_cast<std::ptrdiff_t>(p));
  return LagElement{std::move(a), std::move(c), Word(y.begin() + static_cast<std::ptrdiff_t>(p), y.end())};
}

Word path_symbols(const BratteliDiagram& stationary, const FinitePath& path) {
  Word out;
  for (int v : stationary.vertex_sequence(path)) out.push_back(v - 1);
  return out;
}

double restrict_to_tail(const Sft& s, const Potential& phi, const TailPair& pair, const Word& extension) {
  const int n = static_cast<int>(pair.a.depth());
  if (n < 1) invalid_input("tail pair must have depth at least 1");
  const BratteliDiagram d = stationary_of(s, n);
  if (!d.is_tail_pair(pair)) invalid_input("not a tail pair of the shift's stationary diagram");
  const Word xa = path_symbols(d, pair.a);
  const Word xb = path_symbols(d, pair.b);
  Word stub{xa.back()};
  stub.insert(stub.end(), extension.begin(), extension.end());
  return c_phi_eval(s, phi, LagElement{Word(xa.begin(), xa.end() - 1), Word(xb.begin(), xb.end() - 1), stub});
}

Labelling canonical_labelling(const Sft& s, const Potential& phi, int levels) {
  if (phi.range() > 2) invalid_input("only range-1 and range-2 potentials give edge-local labellings");
  phi.require_total(s);
  const BratteliDiagram d = stationary_of(s, levels);
  Labelling f(Group::reals());
  for (int n = 1; n <= levels; ++n)
    for (const Edge& e : d.edges(n)) {
      const Word vw{e.source - 1, e.range - 1};
      f.set(n, e.id, phi.at(vw, 0));
    }
  return f;
}

StationarityReport stationarity_check(const Sft& s, const Labelling& c, const Potential& phi, int depth, double tol) {
  constexpr std::size_t kKeptFailures = 16;
  StationarityReport report;
  if (depth < 1) return report;
  const BratteliDiagram d = stationary_of(s, depth);
  const auto k = static_cast<std::size_t>(phi.range());
  for (int t = 1; t <= depth; ++t) {
    const auto paths = enumerate_paths(d, t);
    std::map<int, std::vector<std::size_t>> by_terminal;
    for (std::size_t i = 0; i < paths.size(); ++i) by_terminal[*d.terminal(paths[i])].push_back(i);
    for (const auto& [v, members] : by_terminal) {
      if (t < 2 || k > static_cast<std::size_t>(t) + 1) {
        report.skipped += members.size() * members.size();
        continue;
      }
      for (std::size_t ia : members)
        for (std::size_t ib : members) {
          const TailPair pair{paths[ia], paths[ib]};
          const TailPair shifted{FinitePath{Word(pair.a.edges.begin() + 1, pair.a.edges.end())},
                                 FinitePath{Word(pair.b.edges.begin() + 1, pair.b.edges.end())}};
          if (!d.is_tail_pair(shifted)) {
            ++report.skipped;
            continue;
          }
          const double lhs = eval_quasi_product(c, pair).real() - eval_quasi_product(c, shifted).real();
          const double rhs = phi.at(path_symbols(d, pair.a), 0) - phi.at(path_symbols(d, pair.b), 0);
          const double dev = std::abs(lhs - rhs);
          ++report.checked;
          report.max_deviation = std::max(report.max_deviation, dev);
          if (dev > tol || !std::isfinite(dev)) {
            ++report.failure_count;
            if (report.failures.size() < kKeptFailures)
              report.failures.push_back("depth " + std::to_string(t) + " pair deviates by " + std::to_string(dev));
          }
        }
    }
  }
  return report;
}

}  // namespace afrel

#include <random>

#include "afrel/cocycle.hpp"
#include "support.hpp"

using namespace afrel;

namespace {

int eid(int v, int w) { return StationaryDiagram::edge_id(v, w, 2); }

// Full 2-shift labelling by the symbol (source vertex) of each edge.
Labelling symbol_labelling(const BratteliDiagram& d) {
  Labelling f(Group::lattice(1));
  for (int n = 1; n <= d.levels(); ++n)
    for (const Edge& e : d.edges(n)) f.set(n, e.id, GroupElement(std::vector<std::int64_t>{e.source}));
  return f;
}

GroupElement z(std::int64_t x) { return GroupElement(std::vector<std::int64_t>{x}); }

}  // namespace

TEST_SUITE("cocycle") {
  TEST_CASE("group elements") {
    CHECK(GroupElement::zero(Group::reals()).is_zero());
    CHECK(GroupElement::zero(Group::lattice(3)).lattice().size() == 3);
    CHECK((z(4) - z(6)) == z(-2));
    CHECK(GroupElement(1.5) + GroupElement(2.0) == GroupElement(3.5));
    CHECK_AFREL_ERROR(GroupElement(1.0) + z(1), ErrorKind::InvalidInput);
    CHECK(z(1).belongs_to(Group::lattice(1)));
    CHECK_FALSE(z(1).belongs_to(Group::lattice(2)));
    CHECK_FALSE(GroupElement(0.5).belongs_to(Group::lattice(1)));
  }

  TEST_CASE("equal paths give the identity") {
    const auto d = stationary_from_matrix(test::all_ones(), 3);
    const Labelling f = symbol_labelling(d);
    const FinitePath a{{eid(1, 2), eid(2, 1)}};
    CHECK(eval_quasi_product(f, {a, a}) == z(0));
  }

  TEST_CASE("symbol labelling on the full 2-shift") {
    const auto d = stationary_from_matrix(test::all_ones(), 3);
    const Labelling f = symbol_labelling(d);
    // Symbols 1,2 versus 2,2 with a common continuation.
    const FinitePath a{{eid(1, 2), eid(2, 1)}};
    const FinitePath b{{eid(2, 2), eid(2, 1)}};
    REQUIRE(d.is_tail_pair({a, b}));
    CHECK(eval_quasi_product(f, {a, b}) == z(-1));
    CHECK(eval_quasi_product(f, {b, a}) == z(1));
  }

  TEST_CASE("random-walk labelling into Z^2") {
    const auto d = stationary_from_matrix(test::all_ones(), 3);
    Labelling f(Group::lattice(2));
    for (int n = 1; n <= 3; ++n)
      for (const Edge& e : d.edges(n))
        f.set(n, e.id, GroupElement(e.source == 1 ? std::vector<std::int64_t>{1, 0} : std::vector<std::int64_t>{0, 1}));
    const FinitePath a{{eid(1, 2), eid(2, 1)}};
    const FinitePath b{{eid(2, 1), eid(1, 1)}};
    REQUIRE(d.is_tail_pair({a, b}));
    CHECK(eval_quasi_product(f, {a, b}) == GroupElement(std::vector<std::int64_t>{0, 0}));
  }

  TEST_CASE("missing label is an error") {
    const auto d = stationary_from_matrix(test::all_ones(), 2);
    Labelling f(Group::reals());
    f.set(1, eid(1, 1), 1.0);
    const FinitePath a{{eid(1, 1)}};
    const FinitePath b{{eid(2, 1)}};
    CHECK_AFREL_ERROR(eval_quasi_product(f, {a, b}), ErrorKind::InvalidInput);
    CHECK(f.first_missing(d).has_value());
  }

  TEST_CASE("coboundary perturbation") {
    const auto d = stationary_from_matrix(test::all_ones(), 3);
    Labelling zero(Group::lattice(1));
    for (int n = 1; n <= 3; ++n)
      for (const Edge& e : d.edges(n)) zero.set(n, e.id, z(0));
    CoboundaryData psi{1, {}};
    for (const Edge& e : d.edges(1)) psi.psi[{e.id}] = z(e.source);
    const FinitePath a{{eid(1, 2), eid(2, 1)}};
    const FinitePath b{{eid(2, 2), eid(2, 1)}};
    CHECK(apply_coboundary(zero, psi, {a, b}) == z(-1));
    CHECK(apply_coboundary(zero, psi, {a, a}) == z(0));

    CoboundaryData none{1, {}};
    for (const Edge& e : d.edges(1)) none.psi[{e.id}] = z(0);
    const Labelling f = symbol_labelling(d);
    CHECK(apply_coboundary(f, none, {a, b}) == eval_quasi_product(f, {a, b}));

    CoboundaryData deep{3, {}};
    CHECK_AFREL_ERROR(apply_coboundary(f, deep, {a, b}), ErrorKind::InvalidInput);
  }

  TEST_CASE("cocycle identity on a triple and its negative control") {
    const auto d = stationary_from_matrix(test::all_ones(), 3);
    const Labelling f = symbol_labelling(d);
    const FinitePath a{{eid(1, 2), eid(2, 1)}};
    const FinitePath b{{eid(2, 2), eid(2, 1)}};
    const FinitePath c{{eid(1, 1), eid(1, 1)}};
    CHECK(check_cocycle_identity(f, d, a, a, a));
    CHECK(check_cocycle_identity(f, d, a, b, c));

    // An evaluator that is off by one whenever a != b.
    const CocycleEvaluator corrupted = [&](const TailPair& p) {
      return p.a == p.b ? eval_quasi_product(f, p) : eval_quasi_product(f, p) + z(1);
    };
    CHECK_FALSE(check_cocycle_identity(corrupted, f.group(), d, a, b, c));

    const FinitePath elsewhere{{eid(1, 1), eid(1, 2)}};
    CHECK_AFREL_ERROR(check_cocycle_identity(f, d, a, b, elsewhere), ErrorKind::InvalidInput);
  }

  TEST_CASE("telescoping, tail independence and coboundary invariance on random data") {
    std::mt19937_64 rng(11);
    const auto d = stationary_from_matrix(test::golden(), 7);
    for (const Group& g : {Group::reals(), Group::lattice(1), Group::lattice(3)}) {
      for (int trial = 0; trial < 200; ++trial) {
        Labelling f(g);
        for (int n = 1; n <= 7; ++n)
          for (const Edge& e : d.edges(n)) {
            if (g.is_exact()) {
              std::vector<std::int64_t> v;
              for (int i = 0; i < g.rank; ++i) v.push_back(std::uniform_int_distribution<int>(-50, 50)(rng));
              f.set(n, e.id, GroupElement(v));
            } else {
              f.set(n, e.id, std::uniform_real_distribution<double>(-10, 10)(rng));
            }
          }
        const int depth = std::uniform_int_distribution<int>(1, 5)(rng);
        const auto paths = enumerate_paths(d, depth);
        std::map<int, std::vector<FinitePath>> cls;
        for (const auto& p : paths) cls[*d.terminal(p)].push_back(p);
        auto it = cls.begin();
        std::advance(it, std::uniform_int_distribution<int>(0, static_cast<int>(cls.size()) - 1)(rng));
        auto any = [&] { return it->second[std::uniform_int_distribution<std::size_t>(0, it->second.size() - 1)(rng)]; };
        const FinitePath a = any(), b = any(), c = any();

        // Oracle: plain sums of the labels along each path.
        auto total = [&](const FinitePath& p) {
          GroupElement acc = GroupElement::zero(g);
          for (std::size_t i = 0; i < p.depth(); ++i) acc += f.at(static_cast<int>(i) + 1, p.edges[i]);
          return acc;
        };
        const GroupElement direct = total(a) - total(b);
        CHECK(approx_equal(eval_quasi_product(f, {a, b}), direct, 1e-12));
        CHECK(check_cocycle_identity(f, d, a, b, c));

        // Common extension w cancels.
        FinitePath aw = a, bw = b;
        int v = it->first;
        for (int n = depth; n < 7; ++n) {
          const auto outs = d.out_edges(n, v);
          const Edge& e = d.edges(n + 1)[outs[std::uniform_int_distribution<std::size_t>(0, outs.size() - 1)(rng)]];
          aw = aw.extended(e.id);
          bw = bw.extended(e.id);
          v = e.range;
        }
        if (g.is_exact())
          CHECK(eval_quasi_product(f, {aw, bw}) == eval_quasi_product(f, {a, b}));
        else
          CHECK(approx_equal(eval_quasi_product(f, {aw, bw}), eval_quasi_product(f, {a, b}), 1e-12));

        CoboundaryData psi{std::uniform_int_distribution<int>(1, depth)(rng), {}};
        for (const auto& p : enumerate_paths(d, psi.range))
          psi.psi[p.edges] = g.is_exact() ? GroupElement(std::vector<std::int64_t>(static_cast<std::size_t>(g.rank), 3))
                                          : GroupElement(std::uniform_real_distribution<double>(-1, 1)(rng));
        const CocycleEvaluator perturbed = [&](const TailPair& p) { return apply_coboundary(f, psi, p); };
        CHECK(check_cocycle_identity(perturbed, g, d, a, b, c));
      }
    }
  }

  TEST_CASE("log of a positive labelling") {
    const auto d = stationary_from_matrix(test::one_to_four(), 2);
    const Labelling phi = Labelling::from_edge_labels(d);
    const Labelling lp = phi.log();
    CHECK(lp.real_at(1, eid(2, 2)) == doctest::Approx(std::log(4.0)));
    CHECK_AFREL_ERROR(Labelling::from_edge_labels(BratteliDiagram({{0}, {0}}, {{{0, 0, 0, {}}}})),
                      ErrorKind::InvalidInput);
  }
}

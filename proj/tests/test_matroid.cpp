#include <random>

#include "doctest.h"
#include "mres/lattice.hpp"

using namespace mres;

namespace {

// 1-based convenience
ElemSet S(std::initializer_list<int> xs) {
  ElemSet s = 0;
  for (int x : xs) s |= bit(static_cast<size_t>(x - 1));
  return s;
}

Graph complete_graph(int v) {
  Graph g{v, {}};
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) g.edges.emplace_back(i, j);
  return g;
}

Graph cycle_graph(int v) {
  Graph g{v, {}};
  for (int i = 0; i < v; ++i) g.edges.emplace_back(i, (i + 1) % v);
  return g;
}

Matroid nonfano() {
  return lines_matroid(7, {S({1, 2, 4}), S({1, 3, 5}), S({2, 3, 6}), S({4, 5, 6}), S({1, 6, 7}), S({2, 5, 7})});
}

}  // namespace

TEST_CASE("construction kinds") {
  auto u23 = uniform_matroid(2, 3);
  CHECK(u23.circuits() == std::vector<ElemSet>{S({1, 2, 3})});
  CHECK(graphic_matroid(complete_graph(3)) == u23);
  CHECK(uniform_matroid(3, 3).circuits().empty());

  auto k4 = graphic_matroid(complete_graph(4));
  CHECK(k4.rank() == 3);
  // the 4 triangles and 3 four-cycles
  CHECK(k4.circuits().size() == 7);

  // realization of U(2,3) and of the braid arrangement
  std::vector<std::vector<Rational>> m = {{1, 0, 1}, {0, 1, 1}};
  CHECK(realization_matroid(m) == u23);
  std::vector<std::vector<Rational>> braid = {{1, 1, 1, 0, 0, 0}, {-1, 0, 0, 1, 1, 0}, {0, -1, 0, -1, 0, 1}};
  CHECK(realization_matroid(braid).circuits().size() == 7);

  auto nf = nonfano();
  CHECK(nf.size() == 7);
  CHECK(nf.rank() == 3);
  CHECK(long_lines(nf).size() == 6);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(matroid_from_circuits(3, {S({1, 2})}), InputError);
  // elimination fails: {1,2,3} and {1,2,4} force a circuit inside {1,3,4}... missing
  CHECK_THROWS_AS(matroid_from_circuits(4, {S({1, 2, 3}), S({1, 2, 4})}), InputError);
  CHECK_THROWS_AS(matroid_from_circuits(4, {S({1, 2, 3}), S({1, 2, 3, 4})}), InputError);
  CHECK_THROWS_AS(lines_matroid(5, {S({1, 2, 3}), S({1, 2, 4})}), InputError);
  CHECK_THROWS_AS(graphic_matroid(Graph{2, {{0, 1}, {0, 1}}}), InputError);
  std::vector<std::vector<Rational>> parallel = {{1, 2, 0}, {0, 0, 1}};
  CHECK_THROWS_AS(realization_matroid(parallel), InputError);
}

TEST_CASE("rank and closure") {
  auto u23 = uniform_matroid(2, 3);
  CHECK(u23.closure(S({1, 2})) == S({1, 2, 3}));
  auto k4 = graphic_matroid(complete_graph(4));
  // edges 01, 02, 03 form a spanning star
  CHECK(k4.rank(S({1, 2, 3})) == 3);
  CHECK(k4.is_independent(S({1, 2, 3})));
  auto ds = direct_sum(u23, u23);
  CHECK(ds.circuits() == std::vector<ElemSet>{S({1, 2, 3}), S({4, 5, 6})});
  CHECK(ds.rank(S({1, 5})) == 2);
  CHECK(ds.closure(S({1, 5})) == S({1, 5}));
  CHECK(direct_sum(u23, Matroid(0, {}, MatroidKind::Circuits)) == u23);
}

TEST_CASE("closure axioms on random realizations") {
  std::mt19937 rng(1);
  for (int seed = 0; seed < 40; ++seed) {
    size_t n = 3 + rng() % 6;
    std::vector<std::vector<Rational>> m(3, std::vector<Rational>(n));
    for (;;) {
      for (auto& row : m)
        for (auto& x : row) x = static_cast<long>(rng() % 5) - 2;
      try {
        auto M = realization_matroid(m);
        for (int t = 0; t < 20; ++t) {
          ElemSet s = rng() & M.ground(), s2 = s | (rng() & M.ground());
          ElemSet c = M.closure(s);
          CHECK(M.rank(c) == M.rank(s));
          CHECK(M.closure(c) == c);
          CHECK(subset_of(s, c));
          CHECK(subset_of(c, M.closure(s2)));
        }
        break;
      } catch (const InputError&) {
        // not simple; draw again
      }
    }
  }
}

TEST_CASE("connectivity") {
  CHECK(is_connected(uniform_matroid(2, 3)));
  auto u23 = uniform_matroid(2, 3);
  CHECK_FALSE(is_connected(direct_sum(u23, u23)));
  CHECK(is_connected(graphic_matroid(complete_graph(4))));
  CHECK(components(direct_sum(u23, u23)).size() == 2);
}

TEST_CASE("lattice of flats") {
  FlatLattice l23(uniform_matroid(2, 3));
  CHECK(l23.level(0).size() == 1);
  CHECK(l23.level(1).size() == 3);
  CHECK(l23.flats_of_rank(2) == std::vector<ElemSet>{S({1, 2, 3})});
  CHECK(l23.mobius(S({1, 2, 3})) == 2);
  CHECK(l23.level(3).empty());

  FlatLattice b3(uniform_matroid(3, 3));
  CHECK(b3.flats().size() == 8);
  CHECK(b3.mobius(S({1, 2, 3})) == -1);

  auto nf = nonfano();
  FlatLattice lnf(nf);
  CHECK(lnf.level(2).size() == 9);
  int triples = 0, doubles = 0;
  for (size_t i : lnf.level(2)) {
    auto& f = lnf.flat(i);
    CHECK(f.mobius == set_size(f.elements) - 1);
    (set_size(f.elements) == 3 ? triples : doubles)++;
  }
  CHECK(triples == 6);
  CHECK(doubles == 3);
  CHECK_THROWS_AS(lnf.mobius(S({1, 2})), InputError);
}

TEST_CASE("lattice invariants") {
  auto u23 = uniform_matroid(2, 3);
  std::vector<Matroid> ms = {graphic_matroid(complete_graph(4)), nonfano(), direct_sum(u23, u23),
                             uniform_matroid(3, 5), graphic_matroid(complete_graph(5))};
  for (auto& m : ms) {
    FlatLattice L(m);
    // semimodular inequality over all pairs
    for (auto& x : L.flats())
      for (auto& y : L.flats())
        CHECK(x.rank + y.rank >= m.rank(x.elements | y.elements) + m.rank(x.elements & y.elements));
    // sign alternation of Moebius sums
    for (int k = 0; k <= L.rank(); ++k) {
      long s = 0;
      for (size_t i : L.level(k)) s += L.flat(i).mobius;
      CHECK(((k % 2 == 0) ? s > 0 : s < 0));
    }
  }
  // L(M1 + M2) has |L(M1)| * |L(M2)| flats with ranks adding
  auto a = graphic_matroid(complete_graph(4));
  FlatLattice la(a), lb(u23), lab(direct_sum(a, u23));
  CHECK(lab.flats().size() == la.flats().size() * lb.flats().size());
  for (int k = 0; k <= lab.rank(); ++k) {
    size_t c = 0;
    for (int i = 0; i <= k; ++i)
      if (i <= la.rank() && k - i <= lb.rank()) c += la.level(i).size() * lb.level(k - i).size();
    CHECK(lab.level(k).size() == c);
  }
}

TEST_CASE("supersolvability") {
  for (int n = 2; n <= 6; ++n)
    for (int r = 2; r <= n; ++r) {
      FlatLattice L(uniform_matroid(r, static_cast<size_t>(n)));
      CHECK(L.is_supersolvable() == (r == 2 || r == n));
    }
  FlatLattice k4(graphic_matroid(complete_graph(4)));
  auto chain = k4.supersolvable_chain();
  REQUIRE(chain.has_value());
  CHECK(chain->size() == 4);
  CHECK_FALSE(FlatLattice(graphic_matroid(cycle_graph(4))).is_supersolvable());
  CHECK_FALSE(FlatLattice(nonfano()).is_supersolvable());
}

TEST_CASE("localization, restriction, line closure") {
  auto nf = nonfano();
  FlatLattice L(nf);
  for (size_t i : L.level(2)) {
    auto loc = localization(nf, L.flat(i).elements);
    CHECK(loc == uniform_matroid(2, loc.size()));
  }
  CHECK_THROWS_AS(localization(nf, S({1, 2})), InputError);
  CHECK(is_line_closed(nf, nf.ground()));
  auto u23 = uniform_matroid(2, 3);
  CHECK_FALSE(is_line_closed(u23, S({1, 2})));
  CHECK(is_line_closed(nf, S({1, 2, 4})));
}

TEST_CASE("irreducible flags") {
  FlatLattice k4(graphic_matroid(complete_graph(4)));
  int strict = 0, conn = 0;
  for (size_t i = 0; i < k4.flats().size(); ++i) {
    strict += k4.irreducible(i, IrreducibleMode::Strict);
    conn += k4.irreducible(i, IrreducibleMode::Connected);
  }
  // connected flats: 6 points, 4 triangles, the whole K4
  CHECK(conn == 11);
  CHECK(strict > 0);
}

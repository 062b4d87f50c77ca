#include <random>

#include "doctest.h"
#include "mres/catalog.hpp"
#include "mres/koszul.hpp"
#include "mres/series.hpp"

using namespace mres;

namespace {

size_t binom(long n, long k) { return binomial(n, k).get_ui(); }

// number of complete subgraphs on s vertices
size_t cliques(const Graph& g, int s) {
  std::vector<std::vector<bool>> adj(g.vertices, std::vector<bool>(g.vertices));
  for (auto [a, b] : g.edges) adj[a][b] = adj[b][a] = true;
  size_t c = 0;
  for (uint32_t mask = 0; mask < (1u << g.vertices); ++mask) {
    if (std::popcount(mask) != s) continue;
    bool ok = true;
    for (int i = 0; i < g.vertices && ok; ++i)
      for (int j = i + 1; j < g.vertices && ok; ++j)
        if ((mask >> i & 1) && (mask >> j & 1) && !adj[i][j]) ok = false;
    c += ok;
  }
  return c;
}

}  // namespace

TEST_CASE("W0 and small W1") {
  OSAlgebra u(uniform_matroid(2, 3), Ring::rationals());
  CHECK(koszul_module_dim(u, 0, 0) == 1);
  for (int d = 1; d <= 4; ++d) CHECK(koszul_module_dim(u, 0, d) == 0);
  for (int d = 0; d <= 5; ++d) CHECK(koszul_module_dim(u, 1, d) == static_cast<size_t>(d + 1));
  OSAlgebra b(uniform_matroid(3, 3), Ring::rationals());
  for (int d = 0; d <= 3; ++d) CHECK(koszul_module_dim(b, 1, d) == 0);
  auto wb = w1_presentation(b);
  CHECK(rank_of(wb.k) == wb.pairs.size());
  CHECK(w1_cokernel_dim(wb, 0) == 0);
}

TEST_CASE("uniform rank 2 Chen ranks") {
  for (size_t n = 3; n <= 5; ++n) {
    OSAlgebra a(uniform_matroid(2, n), Ring::rationals());
    auto th = chen_ranks_inverse(a, 8);
    for (int r = 2; r <= 8; ++r) CHECK(th[r - 2] == (r - 1) * binom(n + r - 3, r));
    for (int d = 0; d <= 3; ++d) CHECK(koszul_module_dim(a, 1, d) == th[d]);
  }
}

TEST_CASE("graphic Chen ranks") {
  std::mt19937 rng(11);
  std::vector<Graph> graphs{complete_graph(4), complete_graph(5), cycle_graph(4)};
  for (int t = 0; t < 8; ++t) {
    Graph g{5, {}};
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j)
        if (rng() % 3) g.edges.emplace_back(i, j);
    if (!g.edges.empty()) graphs.push_back(g);
  }
  for (auto& g : graphs) {
    OSAlgebra a(graphic_matroid(g), Ring::rationals(), 3);
    auto th = chen_ranks_inverse(a, 6);
    size_t k3 = cliques(g, 3), k4 = cliques(g, 4);
    CHECK(th[0] == k3);
    for (int r = 3; r <= 6; ++r) CHECK(th[r - 2] == (r - 1) * (k3 + k4));
  }
}

TEST_CASE("non-Fano") {
  auto m = load_catalog("nonfano").matroid;
  OSAlgebra a(m, Ring::rationals(), 3);
  auto w = w1_presentation(a);
  CHECK(w1_cokernel_dim(w, 0) == 6);
  auto th = chen_ranks_inverse(a, 8);
  CHECK(th[0] == 6);
  CHECK(th[1] == 17);
  for (int r = 4; r <= 8; ++r) CHECK(th[r - 2] == 9 * (r - 1));
}

TEST_CASE("presentation and strands agree") {
  for (auto& name : catalog_names()) {
    auto m = load_catalog(name).matroid;
    OSAlgebra a(m, Ring::rationals(), 3);
    auto w = w1_presentation(a);
    int top = m.size() <= 9 ? 3 : 1;
    auto th = chen_ranks_inverse(a, top + 2);
    for (int d = 0; d <= top; ++d) {
      size_t c = w1_cokernel_dim(w, d);
      CHECK_MESSAGE(c == koszul_module_dim(a, 1, d), name << " d=" << d);
      CHECK_MESSAGE(c == th[d], name << " d=" << d);
    }
  }
}

TEST_CASE("W1 support") {
  auto k4 = load_catalog("braid-K4").matroid;
  OSAlgebra a(k4, Ring::prime(5), 2);
  auto w = w1_presentation(a);
  W1SupportProbe probe(w);
  std::vector<uint32_t> zero(6, 0);
  CHECK(probe.contains(zero.data()));
  CHECK(w1_support_contains(w, std::vector<Rational>(6)));
  auto s = w1_support_point_set(w);
  CHECK(s.count == 121);
  CHECK(s.points == resonance_point_set(a, 1, 1).points);
  // fast probe against the literal rank test at random points of F_5^6
  std::mt19937 rng(5);
  for (int t = 0; t < 300; ++t) {
    std::vector<uint32_t> x(6);
    std::vector<Rational> xq;
    for (auto& v : x) v = rng() % 5, xq.emplace_back(v);
    CHECK(probe.contains(x.data()) == w1_support_contains(w, xq));
  }
  OSAlgebra b(uniform_matroid(4, 4), Ring::prime(3));
  auto wb = w1_presentation(b);
  W1SupportProbe pb(wb);
  CHECK_FALSE(pb.contains(std::vector<uint32_t>{1, 2, 0, 0}.data()));
  CHECK_FALSE(pb.contains(std::vector<uint32_t>{0, 0, 0, 0}.data()));
}

#include <random>

#include "doctest.h"
#include "mres/matrix.hpp"
#include "mres/series.hpp"

using namespace mres;

namespace {

ExactMatrix from_rows(Ring r, const std::vector<std::vector<long>>& rows) {
  ExactMatrix m(r, rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m.set(i, j, rows[i][j]);
  return m;
}

std::vector<Integer> ints(std::initializer_list<long> v) {
  std::vector<Integer> out;
  for (long x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("rank over Q and F_p") {
  CHECK(rank_of(ExactMatrix::identity(Ring::rationals(), 3)) == 3);
  CHECK(rank_of(ExactMatrix(Ring::prime(2), 4, 7)) == 0);
  CHECK(rank_of(from_rows(Ring::rationals(), {{1, 2}, {2, 4}})) == 1);
  // singular mod 3 only
  auto m = from_rows(Ring::rationals(), {{1, 1}, {1, 4}});
  CHECK(rank_of(m) == 2);
  CHECK(rank_of(m.convert(Ring::prime(3))) == 1);
  CHECK_THROWS_AS(rank_of(ExactMatrix(Ring::integers(), 2, 2)), InputError);
}

TEST_CASE("kernel basis") {
  CHECK(kernel_basis(ExactMatrix::identity(Ring::rationals(), 3)).cols() == 0);
  CHECK(kernel_basis(ExactMatrix(Ring::rationals(), 2, 3)).cols() == 3);
  auto m = from_rows(Ring::rationals(), {{1, 1, 1}});
  auto k = kernel_basis(m);
  REQUIRE(k.cols() == 2);
  CHECK(rank_of(k) == 2);
  auto prod = m.mul(k);
  for (size_t j = 0; j < prod.cols(); ++j) CHECK(prod.is_zero(0, j));
}

TEST_CASE("smith normal form") {
  CHECK(smith_normal_form(ExactMatrix::identity(Ring::integers(), 2)) == ints({1, 1}));
  CHECK(smith_normal_form(from_rows(Ring::integers(), {{2, 0}, {0, 0}})) == ints({2}));
  CHECK(smith_normal_form(from_rows(Ring::integers(), {{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}})) ==
        ints({2, 6, 12}));
  CHECK(smith_normal_form(from_rows(Ring::integers(), {{2, 0}, {0, 3}})) == ints({1, 6}));
}

TEST_CASE("rank plus nullity and SNF count on random integer matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    ExactMatrix z(Ring::integers(), r, c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) z.set(i, j, static_cast<long>(rng() % 5) - 2);
    auto q = z.convert(Ring::rationals());
    size_t rk = rank_of(q);
    CHECK(rk + kernel_basis(q).cols() == c);
    CHECK(smith_normal_form(z).size() == rk);
    auto f = z.convert(Ring::prime(5));
    CHECK(rank_of(f) + kernel_basis(f).cols() == c);
    CHECK(rank_of(f) <= rk);
  }
}

TEST_CASE("sparse and dense elimination agree") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    size_t r = 1 + rng() % 9, c = 1 + rng() % 12;
    const uint32_t p = 7;
    std::vector<uint32_t> dense(r * c);
    EchelonFp sp(p, c);
    EchelonQ sq(c);
    ExactMatrix q(Ring::rationals(), r, c);
    for (size_t i = 0; i < r; ++i) {
      SparseRowFp row;
      SparseRowZ zrow;
      for (size_t j = 0; j < c; ++j) {
        uint32_t v = rng() % 3 == 0 ? rng() % p : 0;
        dense[i * c + j] = v;
        if (v) row.emplace_back(j, v), zrow.emplace_back(j, Integer(v));
        q.set(i, j, static_cast<long>(v));
      }
      sp.insert(row);
      sq.insert(zrow);
    }
    CHECK(sp.rank() == rank_fp_dense(dense, r, c, p));
    CHECK(sp.rank() == rank_of(q.convert(Ring::prime(p))));
    CHECK(sq.rank() == rank_of(q));
  }
}

TEST_CASE("solve_exponents") {
  // (1-t)(1-2t)(1-3t)
  Series c = ints({1, -6, 11, -6, 0});
  CHECK(solve_exponents(c) == ints({6, 4, 10, 21}));
  // cross-check against Witt numbers of free Lie algebras on 1, 2, 3 generators
  for (long r = 1; r <= 4; ++r)
    CHECK(solve_exponents(c)[r - 1] == witt_number(1, r) + witt_number(2, r) + witt_number(3, r));
  CHECK(solve_exponents(ints({1, -1, 0, 0})) == ints({1, 0, 0}));
  CHECK(solve_exponents(ints({1, -2, 0, 0, 0, 0})) == ints({2, 1, 2, 3, 6}));
  CHECK_THROWS_AS(solve_exponents(ints({2, 1, 0})), InputError);
  // integer series always have integer exponents
  CHECK(solve_exponents(ints({1, 1, 0})) == ints({-1, 1}));
}

TEST_CASE("solve_exponents inverts the product expansion") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    size_t R = 1 + rng() % 8;
    std::vector<Integer> phi(R);
    for (auto& x : phi) x = static_cast<long>(rng() % 6);
    CHECK(solve_exponents(expand_lcs_product(phi, R)) == phi);
  }
}

TEST_CASE("witt numbers") {
  CHECK(witt_number(2, 3) == 2);
  CHECK(witt_number(7, 2) == 21);
  CHECK(witt_number(3, 1) == 3);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(2, 5) == 0);
}

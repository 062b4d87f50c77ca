#include <random>

#include "doctest.h"
#include "mres/fp_kernels.hpp"
#include "mres/matrix.hpp"

using namespace mres;

TEST_CASE("avx2 kernels match the scalar reference") {
  const kernels::KernelSet* v = kernels::avx2_set();
  if (!v) {
    MESSAGE("AVX2 unavailable; scalar path only");
    return;
  }
  std::mt19937_64 rng(5);
  const uint32_t primes[] = {2, 3, 5, 7, 65521, 2147483629u, 1000000007u};
  for (uint32_t p : primes)
    for (size_t len : {0, 1, 3, 7, 8, 9, 15, 16, 17, 31, 64, 100, 257}) {
      std::vector<uint32_t> x(len), y(len);
      for (auto& e : x) e = rng() % p;
      for (auto& e : y) e = rng() % p;
      for (uint32_t c : {0u, 1u, p - 1, static_cast<uint32_t>(rng() % p)}) {
        auto a = y, b = y;
        kernels::scalar_set().axpy(a.data(), x.data(), c, len, p);
        v->axpy(b.data(), x.data(), c, len, p);
        CHECK(a == b);
        for (size_t i = 0; i < len; ++i) CHECK(a[i] == (y[i] + uint64_t(c) * x[i]) % p);
        a = y, b = y;
        kernels::scalar_set().scale(a.data(), c, len, p);
        v->scale(b.data(), c, len, p);
        CHECK(a == b);
      }
    }
}

TEST_CASE("dense rank is kernel independent") {
  std::mt19937 rng(9);
  for (int trial = 0; trial < 30; ++trial) {
    size_t r = 1 + rng() % 40, c = 1 + rng() % 40;
    uint32_t p = trial % 2 ? 5 : 2147483629u;
    std::vector<uint32_t> a(r * c);
    for (auto& e : a) e = rng() % 4 == 0 ? rng() % p : 0;
    kernels::select("scalar");
    size_t s = rank_fp_dense(a, r, c, p);
    kernels::select("auto");
    CHECK(rank_fp_dense(a, r, c, p) == s);
  }
}

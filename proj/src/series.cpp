#include "mres/series.hpp"

namespace mres {

int mobius_number(uint64_t d) {
  int mu = 1;
  for (uint64_t q = 2; q * q <= d; ++q) {
    if (d % q) continue;
    d /= q;
    if (d % q == 0) return 0;
    mu = -mu;
  }
  if (d > 1) mu = -mu;
  return mu;
}

Integer binomial(long n, long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

Integer witt_number(long n, long r) {
  if (r <= 0) return 0;
  Integer s = 0, pw;
  for (long d = 1; d <= r; ++d) {
    if (r % d) continue;
    int mu = mobius_number(static_cast<uint64_t>(d));
    if (!mu) continue;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r / d));
    s += mu * pw;
  }
  return s / r;
}

std::vector<Integer> solve_exponents(const Series& c) {
  if (c.empty() || c[0] != 1) throw InputError("solve_exponents: constant term must be 1");
  const size_t R = c.size() - 1;
  // power sums of the logarithmic derivative: t c'/c = sum p_m t^m
  std::vector<Integer> p(R + 1, 0);
  for (size_t m = 1; m <= R; ++m) {
    Integer v = Integer(static_cast<long>(m)) * c[m];
    for (size_t k = 1; k < m; ++k) v -= c[k] * p[m - k];
    p[m] = v;
  }
  // sum_{r|m} r phi_r = -p_m, inverted by Moebius
  std::vector<Integer> phi(R, 0);
  for (size_t m = 1; m <= R; ++m) {
    Integer s = 0;
    for (size_t d = 1; d <= m; ++d) {
      if (m % d) continue;
      int mu = mobius_number(m / d);
      if (mu) s -= mu * p[d];
    }
    if (!mpz_divisible_ui_p(s.get_mpz_t(), m))
      throw InputError("solve_exponents: exponent phi_" + std::to_string(m) + " is not an integer");
    phi[m - 1] = s / static_cast<long>(m);
  }
  return phi;
}

Series series_mul(const Series& a, const Series& b, size_t R) {
  Series out(R + 1, 0);
  for (size_t i = 0; i < a.size() && i <= R; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < b.size() && i + j <= R; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

namespace {

// (1 - u)^e as a series in u up to u^K, e any integer
std::vector<Integer> binomial_series(const Integer& e, size_t K) {
  std::vector<Integer> out(K + 1, 0);
  out[0] = 1;
  // coefficient of u^k is (-1)^k C(e, k) = prod_{i<k} (i - e) / k!
  Integer num = 1, den = 1;
  for (size_t k = 1; k <= K; ++k) {
    num *= Integer(static_cast<long>(k - 1)) - e;
    den *= static_cast<long>(k);
    out[k] = num / den;
  }
  return out;
}

}  // namespace

Series power_of_linear(long j, const Integer& e, size_t R) {
  std::vector<Integer> b = binomial_series(e, R);
  Series out(R + 1, 0);
  Integer pw = 1;
  for (size_t k = 0; k <= R; ++k) {
    out[k] = b[k] * pw;
    pw *= j;
  }
  return out;
}

Series expand_lcs_product(const std::vector<Integer>& phi, size_t R) {
  Series acc(R + 1, 0);
  acc[0] = 1;
  for (size_t r = 1; r <= phi.size() && r <= R; ++r) {
    if (sgn(phi[r - 1]) == 0) continue;
    std::vector<Integer> b = binomial_series(phi[r - 1], R / r);
    Series f(R + 1, 0);
    for (size_t k = 0; k * r <= R; ++k) f[k * r] = b[k];
    acc = series_mul(acc, f, R);
  }
  return acc;
}

}  // namespace mres

#include "mres/ring.hpp"

#include <cctype>

namespace mres {

bool is_prime(uint64_t v) {
  if (v < 2) return false;
  for (uint64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

Ring Ring::prime(uint32_t p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw InputError("modulus " + std::to_string(p) + " is not a prime below 2^31");
  return {RingKind::Fp, p};
}

Ring Ring::parse(const std::string& s) {
  if (s == "Q" || s == "QQ" || s == "q") return rationals();
  if (s == "Z" || s == "ZZ" || s == "z") return integers();
  std::string digits;
  for (char c : s)
    if (std::isdigit(static_cast<unsigned char>(c))) digits += c;
  if (digits.empty() || digits.size() > 10) throw InputError("unknown ring '" + s + "'");
  return prime(static_cast<uint32_t>(std::stoull(digits)));
}

std::string Ring::name() const {
  switch (kind) {
    case RingKind::Q: return "Q";
    case RingKind::Z: return "Z";
    case RingKind::Fp: return "F" + std::to_string(p);
  }
  return "?";
}

uint32_t inv_mod(uint32_t a, uint32_t p) {
  int64_t t = 0, nt = 1, r = p, nr = a % p;
  while (nr != 0) {
    int64_t q = r / nr;
    t -= q * nt; std::swap(t, nt);
    r -= q * nr; std::swap(r, nr);
  }
  if (r != 1) throw std::domain_error("zero has no inverse");
  if (t < 0) t += p;
  return static_cast<uint32_t>(t);
}

uint32_t reduce_mod(const Integer& v, uint32_t p) {
  return static_cast<uint32_t>(mpz_fdiv_ui(v.get_mpz_t(), p));
}

uint32_t reduce_mod(const Rational& v, uint32_t p) {
  uint32_t num = reduce_mod(Integer(v.get_num()), p);
  uint32_t den = reduce_mod(Integer(v.get_den()), p);
  if (den == 0) throw InputError("denominator vanishes modulo " + std::to_string(p));
  return mul_mod(num, inv_mod(den, p), p);
}

}  // namespace mres

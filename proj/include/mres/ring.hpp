#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace mres {

using Integer = mpz_class;
using Rational = mpq_class;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when an enumeration or matrix exceeds its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two independent routes disagreed; never swallowed.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class RingKind { Q, Z, Fp };

struct Ring {
  RingKind kind = RingKind::Q;
  uint32_t p = 0;

  static Ring rationals() { return {RingKind::Q, 0}; }
  static Ring integers() { return {RingKind::Z, 0}; }
  static Ring prime(uint32_t p);
  // "Q", "Z", "F5", "GF(5)" or a bare prime "5"
  static Ring parse(const std::string& s);

  bool is_field() const { return kind != RingKind::Z; }
  uint32_t characteristic() const { return kind == RingKind::Fp ? p : 0; }
  std::string name() const;
  bool operator==(const Ring&) const = default;
};

bool is_prime(uint64_t v);

inline uint32_t add_mod(uint32_t a, uint32_t b, uint32_t p) {
  uint32_t s = a + b;
  return s >= p ? s - p : s;
}
inline uint32_t sub_mod(uint32_t a, uint32_t b, uint32_t p) {
  return a >= b ? a - b : a + p - b;
}
inline uint32_t mul_mod(uint32_t a, uint32_t b, uint32_t p) {
  return static_cast<uint32_t>(uint64_t(a) * b % p);
}
uint32_t inv_mod(uint32_t a, uint32_t p);
uint32_t reduce_mod(const Integer& v, uint32_t p);
// v must have a denominator prime to p
uint32_t reduce_mod(const Rational& v, uint32_t p);

}  // namespace mres

#pragma once

#include <cstdint>
#include <vector>

#include "mres/ring.hpp"

namespace mres {

using Series = std::vector<Integer>;  // dense coefficients c_0..c_R

// Number-theoretic Moebius function.
int mobius_number(uint64_t d);
Integer binomial(long n, long k);
// (1/r) sum_{d|r} mu(d) n^{r/d}
Integer witt_number(long n, long r);

// Solve prod_{r>=1} (1 - t^r)^{phi_r} == series (mod t^{R+1}) for phi_1..phi_R.
// Throws InputError naming r when some phi_r is not an integer.
std::vector<Integer> solve_exponents(const Series& series);
// Expand prod_{r=1..R} (1 - t^r)^{phi_r} up to t^R (phi_r may be negative).
Series expand_lcs_product(const std::vector<Integer>& phi, size_t R);

Series series_mul(const Series& a, const Series& b, size_t R);
// (1 - j t)^e truncated at t^R, e may be negative
Series power_of_linear(long j, const Integer& e, size_t R);

}  // namespace mres

#pragma once

#include <optional>

#include "mres/resonance.hpp"

namespace mres {

// dim W_q(A)_d, where W_q is the homology of the dual universal complex
//   A_{q+1} (x) S -> A_q (x) S -> A_{q-1} (x) S
// and the grading is normalised so that W_q(A)_d sits at A_q (x) S_{d+q}.
// With this normalisation W_0 = k in degree 0 and theta_{d+2} = dim W_1(A)_d.
size_t koszul_module_dim(const OSAlgebra& a, int q, int d);

// W_1 = coker( E^3 (x) S  +  K (x) S  ->  E^2 (x) S ), generators E^2 in degree 0.
// Pairs i<j index E^2 in lexicographic order, triples likewise.
struct W1Presentation {
  Ring ring;
  size_t n = 0;
  std::vector<std::pair<int, int>> pairs;
  ExactMatrix kperp;  // columns: basis of ker(E^2 -> A^2), in pair coordinates
  ExactMatrix k;      // columns: basis of K, the annihilator of kperp
  LinearMatrix relations;  // [d3 | iota], rows = pairs
  size_t pair_index(int i, int j) const;
};
W1Presentation w1_presentation(const OSAlgebra& a);
// dim of the cokernel in degree d, by direct elimination
size_t w1_cokernel_dim(const W1Presentation& w, int d);
// rank [d3(a) | iota] < dim E^2
bool w1_support_contains(const W1Presentation& w, const std::vector<Rational>& a);

// Pointwise support test over F_p.  For a != 0 with first nonzero coordinate f
// the image of contraction by a on E^3 is spanned by the C(n-1,2) vectors
// a.(e_f e_i e_j); a is in the support iff these do not fill kperp's dual.
class W1SupportProbe {
 public:
  explicit W1SupportProbe(const W1Presentation& w);
  bool contains(const uint32_t* a);

 private:
  size_t n_, m_;
  uint32_t p_;
  std::vector<LinearMatrix> pairing_;  // per leading coordinate f
  std::vector<uint32_t> buf_;
  DenseEchelonFp ech_;
};

ResonancePointSet w1_support_point_set(const W1Presentation& w, const EnumerationOptions& opt = {});

// theta_2 .. theta_{rmax} through the inverse system of W_1: U_d is the
// degree-d dual piece, U_0 = kperp, and theta_{d+2} = dim U_d.
std::vector<size_t> chen_ranks_inverse(const OSAlgebra& a, int rmax);

}  // namespace mres

#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "mres/lattice.hpp"
#include "mres/matrix.hpp"

namespace mres {

// Sparse element of the exterior algebra (or of A in NBC coordinates):
// monomial e_S keyed by the subset S.  Over F_p coefficients are kept as
// integers in [0, p).
using ExteriorElement = std::map<ElemSet, Rational>;

// sign of e_S ^ e_T relative to e_{S u T}; 0 when S and T meet
int wedge_sign(ElemSet s, ElemSet t);
ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b, Ring ring);
// d(e_{u1} ^ ... ^ e_{uk}) = sum_i (-1)^{i-1} e_{S - u_i}
ExteriorElement circuit_boundary(ElemSet s);
ExteriorElement boundary(const ExteriorElement& x, Ring ring);
ExteriorElement monomial(ElemSet s);
std::string format_element(const ExteriorElement& x);
Rational normalize(const Rational& v, Ring ring);

class OSAlgebra {
 public:
  // materializes degrees 0..max_degree (default: the rank)
  OSAlgebra(const Matroid& m, Ring ring, int max_degree = -1);

  const Matroid& matroid() const { return m_; }
  Ring ring() const { return ring_; }
  int max_degree() const { return top_; }
  size_t n() const { return m_.size(); }

  // NBC basis in degree k
  const std::vector<ElemSet>& basis(int k) const { return deg(k).nbc; }
  size_t dim(int k) const { return k < 0 || k > top_ ? 0 : deg(k).nbc.size(); }
  std::optional<size_t> basis_index(ElemSet s) const;
  // dimension of E^k / I^k found by elimination, independent of the NBC count
  size_t elimination_dim(int k) const { return deg(k).elim_dim; }
  // number of independent generators of I^k
  size_t ideal_dim(int k) const;

  // coset representative in the NBC basis; x must be homogeneous
  ExteriorElement normal_form(const ExteriorElement& x) const;
  std::vector<Rational> coordinates(const ExteriorElement& x, int k) const;
  ExteriorElement multiply(const ExteriorElement& a, const ExteriorElement& b) const;

  // multiplication by e_i as a map A^k -> A^{k+1}; rows index basis(k+1)
  ExactMatrix left_mult(size_t i, int k) const;
  // the boundary map A^k -> A^{k-1}; rows index basis(k-1)
  ExactMatrix boundary_matrix(int k) const;
  std::vector<size_t> betti() const;

 private:
  struct Degree {
    std::vector<ElemSet> nbc;
    std::unordered_map<ElemSet, uint32_t> nbc_index;
    // normal forms of non-NBC monomials
    std::unordered_map<ElemSet, std::vector<std::pair<uint32_t, Rational>>> nf;
    size_t elim_dim = 0;
    size_t monomials = 0;
  };
  const Degree& deg(int k) const;
  void build_degree(int k);

  Matroid m_;
  Ring ring_;
  int top_ = 0;
  std::vector<Degree> degrees_;
};

// b_k = (-1)^k sum_{X in L_k} mu(X)
std::vector<Integer> betti_numbers(const FlatLattice& lattice);
// Poincare polynomial coefficients, same data as betti_numbers
std::vector<Integer> poincare_polynomial(const FlatLattice& lattice);
// dims of the projective subalgebra ker(d_A) in each degree (A must be over a field)
std::vector<size_t> projective_dims(const OSAlgebra& a);
// columns span ker(d_A) inside A^k
ExactMatrix projective_basis(const OSAlgebra& a, int k);
// dimension of E^1 * I^2 in degree 3 against dim I^3
std::pair<size_t, size_t> quadratic_probe(const OSAlgebra& a);

}  // namespace mres

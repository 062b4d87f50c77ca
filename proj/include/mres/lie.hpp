#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mres/lattice.hpp"
#include "mres/ring.hpp"

namespace mres {

using SparseVecZ = std::vector<std::pair<uint32_t, Integer>>;

// Lyndon basis of the free Lie ring on x_1..x_n in degrees 1..rmax, with the
// tables ad(x_i) : L_r -> L_{r+1} written in the basis.  Words are compared
// lexicographically; the standard bracketing of w expands to w + larger words.
class LyndonBasis {
 public:
  LyndonBasis(size_t n, int rmax);

  size_t n() const { return n_; }
  int max_degree() const { return rmax_; }
  size_t dim(int r) const { return r >= 1 && r <= rmax_ ? words_[r].size() : 0; }
  const std::vector<uint8_t>& word(int r, size_t i) const { return words_[r][i]; }
  std::string bracketing(int r, size_t i) const;
  // [x_i, P_w] for w the idx-th word of degree r < rmax, in degree r+1 coordinates
  const SparseVecZ& ad(size_t i, int r, size_t idx) const { return ad_[r][idx * n_ + i]; }
  // coordinates of a Lie element given by its tensor expansion (word code -> coefficient)
  SparseVecZ coordinates(int r, std::vector<std::pair<uint64_t, Integer>> expansion) const;
  std::vector<std::pair<uint64_t, Integer>> expansion(int r, size_t i) const { return exp_[r][i]; }

 private:
  size_t n_;
  int rmax_;
  std::vector<std::vector<std::vector<uint8_t>>> words_;
  // standard factorization w = uv: length of u and the indices of u, v
  std::vector<std::vector<int>> split_len_;
  std::vector<std::vector<size_t>> split_left_, split_right_;
  std::vector<std::vector<std::vector<std::pair<uint64_t, Integer>>>> exp_;  // sorted by word code
  std::vector<std::unordered_map<uint64_t, uint32_t>> index_;
  std::vector<std::vector<SparseVecZ>> ad_;
};

// Relations [x_u, sum_{v in X} x_v] for X a rank-2 flat and u in X, in the
// pair basis [x_i, x_j], i < j, of L_2.  The span is checked against the
// image of the dual of E^2 -> A^2 (ConsistencyError on mismatch).
struct HolonomyPresentation {
  size_t n = 0;
  std::vector<SparseVecZ> relations;
  std::vector<ElemSet> flats;  // flat of each relation
};
HolonomyPresentation holonomy_relations(const Matroid& m);

struct GradedPieceReport {
  int degree = 0;
  Ring ring;
  size_t dim = 0;                 // over a field; over Z the free rank
  std::vector<Integer> torsion;   // invariant factors > 1 (Z only)
  // dim of h_r (x) F_p computed from the Z data
  size_t dim_mod(uint32_t p) const;
};
// phi_1..phi_R of the holonomy Lie algebra; I_r = [L_1, I_{r-1}]
std::vector<GradedPieceReport> holonomy_ranks(const Matroid& m, int R, Ring ring);
GradedPieceReport holonomy_rank(const Matroid& m, int r, Ring ring);

// closed-form lower bounds from the rank-2 flats of size >= 3
Integer local_holonomy_rank(const FlatLattice& L, int r);
Integer local_chen_rank(const FlatLattice& L, int r);

// phi_3 == local_holonomy_rank(3) over the given field
bool is_decomposable(const Matroid& m, Ring ring);
// Q and each listed prime
bool is_decomposable_z(const Matroid& m, const std::vector<uint32_t>& primes = {2, 3, 5});

// theta_2..theta_R through W_1
std::vector<size_t> chen_ranks(const Matroid& m, int R, Ring ring);

enum class ChenKind { Free, Uniform2, Graphic };
size_t clique_count(const Graph& g, int s);
Integer chen_closed_form(ChenKind kind, long n, int r, const Graph* g = nullptr);

// supersolvable M only (InputError otherwise): solve prod (1-t^r)^phi_r = P(-t)
std::vector<Integer> lcs_from_betti(const Matroid& m, int R);
// exponents e_j of (1 - j t) and the resulting phi_1..phi_R
std::vector<Integer> graphic_exponents(const Graph& g);
std::vector<Integer> glcs_graphic(const Graph& g, int R);

}  // namespace mres

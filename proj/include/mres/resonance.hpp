#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mres/os_algebra.hpp"

namespace mres {

// Matrix whose entries are linear forms sum_v c_v x_v, plus optional
// constant entries (variable index kConstant).
class LinearMatrix {
 public:
  static constexpr uint32_t kConstant = UINT32_MAX;

  LinearMatrix() = default;
  LinearMatrix(Ring ring, size_t rows, size_t cols, size_t nvars);

  Ring ring() const { return ring_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  size_t nvars() const { return nvars_; }
  size_t nonzeros() const { return entries_.size(); }

  void add(size_t i, size_t j, uint32_t var, const Rational& c);
  ExactMatrix evaluate(const std::vector<Rational>& a) const;
  // coefficient matrix of x_var (or of the constant part)
  ExactMatrix coefficient(uint32_t var) const;
  // this * B, where B is a constant matrix with rows == cols()
  LinearMatrix compose_right(const ExactMatrix& b) const;
  // horizontal concatenation [this | other]
  LinearMatrix concat(const LinearMatrix& other) const;

  // F_p only: write the evaluated matrix transposed (cols() rows of length
  // rows()) into out, which must hold rows()*cols() words
  void evaluate_transposed_fp(const uint32_t* a, uint32_t* out) const;

 private:
  struct Entry {
    uint32_t i, j, var;
    Rational c;
    uint32_t cp;
  };
  Ring ring_;
  size_t rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<Entry> entries_;
};

// delta^q_A : A^q (x) S -> A^{q+1} (x) S, u -> sum_i e_i u (x) x_i
LinearMatrix universal_aomoto(const OSAlgebra& a, int q);
// b_q - rank delta^{q-1}_a - rank delta^q_a
size_t aomoto_cohomology_dim(const OSAlgebra& a, const std::vector<Rational>& point, int q);
bool resonance_membership(const OSAlgebra& a, const std::vector<Rational>& point, int q, int s);

// dim - rank(before(a)) - rank(after(a)) for a cochain complex given by two
// linear matrices; evaluated over F_p with the SIMD row kernels.
class CohomologyProbe {
 public:
  CohomologyProbe(LinearMatrix before, LinearMatrix after, size_t dim);
  size_t dim() const { return dim_; }
  size_t cohomology(const uint32_t* a);
  // true iff cohomology(a) >= s; stops eliminating as soon as the answer is known
  bool at_least(const uint32_t* a, size_t s);

 private:
  size_t rank_capped(const LinearMatrix& m, const uint32_t* a, size_t cap, std::vector<uint32_t>& buf,
                     DenseEchelonFp& ech);
  LinearMatrix before_, after_;
  size_t dim_;
  uint32_t p_;
  std::vector<uint32_t> buf_b_, buf_a_;
  DenseEchelonFp ech_b_, ech_a_;
};

enum class Ambient { Projective, Full };  // Projective = the hyperplane sum x_i = 0

struct EnumerationOptions {
  bool store_points = true;
  unsigned threads = 1;
  uint64_t budget = 0;  // 0: MRES_BUDGET or 1e8
};
uint64_t enumeration_budget(const EnumerationOptions& opt);

struct ResonancePointSet {
  uint32_t p = 0;
  int q = 0, s = 0;
  Ambient ambient = Ambient::Projective;
  uint64_t count = 0;  // all points, 0 included when resonant
  bool contains_zero = false;
  bool stored = false;
  std::vector<std::vector<uint32_t>> points;  // sorted full coordinate vectors
  std::vector<std::string> violations;        // points off the hyperplane (full mode)
};

// Generic census over F_p^n or over the hyperplane: the factory makes one
// predicate per worker thread.  Only projective representatives are tested.
using PointPredicate = std::function<bool(const uint32_t*)>;
ResonancePointSet enumerate_points(size_t n, uint32_t p, Ambient ambient,
                                   const std::function<PointPredicate()>& factory, const EnumerationOptions& opt);

ResonancePointSet resonance_point_set(const OSAlgebra& a, int q, int s, Ambient ambient = Ambient::Projective,
                                      const EnumerationOptions& opt = {});
// same, for the projective subalgebra ker(d_A) (points in the hyperplane only)
ResonancePointSet projective_resonance_point_set(const OSAlgebra& a, int q, int s,
                                                 const EnumerationOptions& opt = {});

struct CheckResult {
  CheckResult(std::string n = {}, bool ok = true, std::string d = {}) : name(std::move(n)), pass(ok), detail(std::move(d)) {}
  std::string name;
  bool pass = true;
  std::string detail;
};
struct StructureReport {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

StructureReport verify_structure(const Matroid& m, uint32_t p, int qmax, const EnumerationOptions& opt = {});
// for M = M1 + M2: R^q_1(M) = union_{i+j=q} R^i_1(M1) x R^j_1(M2), pointwise
CheckResult check_product_formula(const Matroid& m1, const Matroid& m2, uint32_t p, int q,
                                  const EnumerationOptions& opt = {});

enum class EnvelopeMode { Denham, Covers };
struct EnvelopeReport {
  bool contained = true;
  uint64_t resonant = 0;        // points of R^q_1
  uint64_t envelope = 0;        // points of the envelope
  uint64_t slack = 0;           // envelope points that are not resonant
  std::vector<std::string> witnesses;  // resonant points outside the envelope
  std::vector<ElemSet> irreducible;    // flats used
};
EnvelopeReport envelope_check(const Matroid& m, uint32_t p, int q, EnvelopeMode mode,
                              IrreducibleMode irr = IrreducibleMode::Connected, const EnumerationOptions& opt = {});

std::string format_point(const std::vector<uint32_t>& a);

}  // namespace mres

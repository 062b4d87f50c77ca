#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "mres/ring.hpp"

namespace mres {

class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(Ring ring, size_t rows, size_t cols);

  Ring ring() const { return ring_; }
  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  void set(size_t i, size_t j, const Rational& v);
  void set(size_t i, size_t j, long v);
  Rational get(size_t i, size_t j) const;
  bool is_zero(size_t i, size_t j) const;

  // raw storage; only one is populated depending on the ring
  const std::vector<Rational>& q_data() const { return q_; }
  const std::vector<uint32_t>& f_data() const { return f_; }
  uint32_t fp(size_t i, size_t j) const { return f_[i * cols_ + j]; }
  void set_fp(size_t i, size_t j, uint32_t v) { f_[i * cols_ + j] = v; }

  ExactMatrix transpose() const;
  ExactMatrix mul(const ExactMatrix& rhs) const;
  // same entries viewed in another ring (Q -> F_p reduction, Z <-> Q)
  ExactMatrix convert(Ring target) const;
  bool operator==(const ExactMatrix& o) const;

  static ExactMatrix identity(Ring r, size_t n);

 private:
  Ring ring_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> q_;
  std::vector<uint32_t> f_;
};

size_t rank_of(const ExactMatrix& m);
// columns of the result form a basis of {x : m x = 0}
ExactMatrix kernel_basis(const ExactMatrix& m);
// reduced row echelon form and the pivot columns
ExactMatrix rref(const ExactMatrix& m, std::vector<size_t>* pivots = nullptr);
// nonzero invariant factors d1 | d2 | ... of an integer matrix
std::vector<Integer> smith_normal_form(const ExactMatrix& m);

// ---- sparse incremental elimination -------------------------------------

using SparseRowZ = std::vector<std::pair<uint32_t, Integer>>;
using SparseRowFp = std::vector<std::pair<uint32_t, uint32_t>>;

// Semi-echelon form over Q kept fraction free: every stored row is a primitive
// integer vector with positive leading entry.  Rows are reduced against the
// pivot of their current leading column, so results depend only on input order.
class EchelonQ {
 public:
  explicit EchelonQ(size_t cols) : pivot_(cols, -1) {}
  // returns true when the row is independent of those inserted before
  bool insert(SparseRowZ row);
  bool insert_rational(const std::vector<std::pair<uint32_t, Rational>>& row);
  size_t rank() const { return rows_.size(); }
  size_t cols() const { return pivot_.size(); }
  const std::vector<SparseRowZ>& rows() const { return rows_; }

 private:
  std::vector<int64_t> pivot_;
  std::vector<SparseRowZ> rows_;
};

class EchelonFp {
 public:
  EchelonFp(uint32_t p, size_t cols) : p_(p), pivot_(cols, -1) {}
  bool insert(SparseRowFp row);
  size_t rank() const { return rows_.size(); }
  size_t cols() const { return pivot_.size(); }
  uint32_t prime() const { return p_; }
  const std::vector<SparseRowFp>& rows() const { return rows_; }

 private:
  uint32_t p_;
  std::vector<int64_t> pivot_;
  std::vector<SparseRowFp> rows_;  // leading entry normalised to 1
};

// Dense variant for F_p whose row operations go through the SIMD kernels.
class DenseEchelonFp {
 public:
  DenseEchelonFp(uint32_t p, size_t cols);
  // row has length cols(); it is consumed (reduced in place)
  bool insert(std::vector<uint32_t>& row) { return insert(row.data()); }
  bool insert(uint32_t* row);
  void reset();
  size_t rank() const { return nrows_; }
  size_t cols() const { return cols_; }

 private:
  uint32_t p_;
  size_t cols_, stride_;
  size_t nrows_ = 0;
  std::vector<int64_t> pivot_;
  std::vector<uint32_t> store_;  // rows normalised so pivot entry is 1
};

// Rank of a dense F_p matrix given row-major, using the active kernels.
size_t rank_fp_dense(std::vector<uint32_t> a, size_t rows, size_t cols, uint32_t p);

}  // namespace mres

#include "mres/matrix.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mres/fp_kernels.hpp"

namespace mres {

ExactMatrix::ExactMatrix(Ring ring, size_t rows, size_t cols)
    : ring_(ring), rows_(rows), cols_(cols) {
  if (ring.kind == RingKind::Fp)
    f_.assign(rows * cols, 0);
  else
    q_.assign(rows * cols, Rational(0));
}

void ExactMatrix::set(size_t i, size_t j, const Rational& v) {
  switch (ring_.kind) {
    case RingKind::Fp: f_[i * cols_ + j] = reduce_mod(v, ring_.p); break;
    case RingKind::Z:
      if (v.get_den() != 1) throw InputError("non-integer entry in integer matrix");
      q_[i * cols_ + j] = v;
      break;
    case RingKind::Q: q_[i * cols_ + j] = v; break;
  }
}

void ExactMatrix::set(size_t i, size_t j, long v) { set(i, j, Rational(v)); }

Rational ExactMatrix::get(size_t i, size_t j) const {
  if (ring_.kind == RingKind::Fp) return Rational(f_[i * cols_ + j]);
  return q_[i * cols_ + j];
}

bool ExactMatrix::is_zero(size_t i, size_t j) const {
  if (ring_.kind == RingKind::Fp) return f_[i * cols_ + j] == 0;
  return sgn(q_[i * cols_ + j]) == 0;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(ring_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) {
      if (ring_.kind == RingKind::Fp)
        t.f_[j * rows_ + i] = f_[i * cols_ + j];
      else
        t.q_[j * rows_ + i] = q_[i * cols_ + j];
    }
  return t;
}

ExactMatrix ExactMatrix::mul(const ExactMatrix& rhs) const {
  if (cols_ != rhs.rows_ || !(ring_ == rhs.ring_)) throw InputError("shape/ring mismatch");
  ExactMatrix out(ring_, rows_, rhs.cols_);
  if (ring_.kind == RingKind::Fp) {
    const uint32_t p = ring_.p;
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        uint32_t a = f_[i * cols_ + k];
        if (a == 0) continue;
        kernels::active().axpy(&out.f_[i * rhs.cols_], &rhs.f_[k * rhs.cols_], a, rhs.cols_, p);
      }
  } else {
    for (size_t i = 0; i < rows_; ++i)
      for (size_t k = 0; k < cols_; ++k) {
        const Rational& a = q_[i * cols_ + k];
        if (sgn(a) == 0) continue;
        for (size_t j = 0; j < rhs.cols_; ++j) {
          const Rational& b = rhs.q_[k * rhs.cols_ + j];
          if (sgn(b) != 0) out.q_[i * rhs.cols_ + j] += a * b;
        }
      }
  }
  return out;
}

ExactMatrix ExactMatrix::convert(Ring target) const {
  ExactMatrix out(target, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (!is_zero(i, j)) out.set(i, j, get(i, j));
  return out;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && q_ == o.q_ && f_ == o.f_;
}

ExactMatrix ExactMatrix::identity(Ring r, size_t n) {
  ExactMatrix m(r, n, n);
  for (size_t i = 0; i < n; ++i) m.set(i, i, 1L);
  return m;
}

// ---- sparse echelon over Q (integer rows) --------------------------------

namespace {

void make_primitive(SparseRowZ& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

// a*x - b*y
SparseRowZ combine(const SparseRowZ& x, const Integer& a, const SparseRowZ& y, const Integer& b) {
  SparseRowZ out;
  out.reserve(x.size() + y.size());
  size_t i = 0, j = 0;
  Integer t;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      t = a * x[i].second - b * y[j].second;
      if (sgn(t) != 0) out.emplace_back(x[i].first, t);
      ++i, ++j;
    }
  }
  return out;
}

}  // namespace

bool EchelonQ::insert(SparseRowZ row) {
  std::erase_if(row, [](const auto& e) { return sgn(e.second) == 0; });
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  make_primitive(row);
  while (!row.empty()) {
    int64_t pi = pivot_[row.front().first];
    if (pi < 0) {
      pivot_[row.front().first] = static_cast<int64_t>(rows_.size());
      rows_.push_back(std::move(row));
      return true;
    }
    const SparseRowZ& P = rows_[pi];
    Integer g = gcd(P.front().second, row.front().second);
    Integer a = P.front().second / g, b = row.front().second / g;
    row = combine(row, a, P, b);
    make_primitive(row);
  }
  return false;
}

bool EchelonQ::insert_rational(const std::vector<std::pair<uint32_t, Rational>>& row) {
  Integer l = 1;
  for (auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  SparseRowZ z;
  z.reserve(row.size());
  for (auto& [c, v] : row) {
    Rational s = v * l;
    z.emplace_back(c, s.get_num());
  }
  return insert(std::move(z));
}

bool EchelonFp::insert(SparseRowFp row) {
  std::erase_if(row, [](const auto& e) { return e.second == 0; });
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const uint32_t p = p_;
  SparseRowFp tmp;
  while (!row.empty()) {
    int64_t pi = pivot_[row.front().first];
    if (pi < 0) {
      uint32_t inv = inv_mod(row.front().second, p);
      for (auto& e : row) e.second = mul_mod(e.second, inv, p);
      pivot_[row.front().first] = static_cast<int64_t>(rows_.size());
      rows_.push_back(std::move(row));
      return true;
    }
    const SparseRowFp& P = rows_[pi];
    uint32_t f = p - row.front().second;  // row += f * P kills the lead
    tmp.clear();
    size_t i = 0, j = 0;
    while (i < row.size() || j < P.size()) {
      if (j == P.size() || (i < row.size() && row[i].first < P[j].first)) {
        tmp.push_back(row[i++]);
      } else if (i == row.size() || P[j].first < row[i].first) {
        tmp.emplace_back(P[j].first, mul_mod(P[j].second, f, p));
        ++j;
      } else {
        uint32_t v = add_mod(row[i].second, mul_mod(P[j].second, f, p), p);
        if (v != 0) tmp.emplace_back(row[i].first, v);
        ++i, ++j;
      }
    }
    row.swap(tmp);
  }
  return false;
}

DenseEchelonFp::DenseEchelonFp(uint32_t p, size_t cols)
    : p_(p), cols_(cols), stride_(cols), pivot_(cols, -1) {}

void DenseEchelonFp::reset() {
  nrows_ = 0;
  store_.clear();
  std::fill(pivot_.begin(), pivot_.end(), -1);
}

bool DenseEchelonFp::insert(uint32_t* row) {
  const auto& K = kernels::active();
  for (size_t j = 0; j < cols_; ++j) {
    uint32_t v = row[j];
    if (v == 0) continue;
    int64_t pi = pivot_[j];
    if (pi < 0) {
      K.scale(row + j, inv_mod(v, p_), cols_ - j, p_);
      pivot_[j] = static_cast<int64_t>(nrows_);
      store_.insert(store_.end(), row, row + cols_);
      ++nrows_;
      return true;
    }
    K.axpy(row + j, store_.data() + pi * stride_ + j, p_ - v, cols_ - j, p_);
  }
  return false;
}

size_t rank_fp_dense(std::vector<uint32_t> a, size_t rows, size_t cols, uint32_t p) {
  const auto& K = kernels::active();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = rows;
    for (size_t i = r; i < rows; ++i)
      if (a[i * cols + c] != 0) { piv = i; break; }
    if (piv == rows) continue;
    if (piv != r)
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols, a.begin() + r * cols);
    uint32_t* pr = &a[r * cols];
    K.scale(pr + c, inv_mod(pr[c], p), cols - c, p);
    for (size_t i = r + 1; i < rows; ++i) {
      uint32_t v = a[i * cols + c];
      if (v != 0) K.axpy(&a[i * cols + c], pr + c, p - v, cols - c, p);
    }
    ++r;
  }
  return r;
}

// ---- dense operations ------------------------------------------------------

size_t rank_of(const ExactMatrix& m) {
  switch (m.ring().kind) {
    case RingKind::Z:
      throw InputError("rank_of needs a field; use smith_normal_form over Z");
    case RingKind::Fp:
      return rank_fp_dense(m.f_data(), m.rows(), m.cols(), m.ring().p);
    case RingKind::Q: {
      EchelonQ ech(m.cols());
      std::vector<std::pair<uint32_t, Rational>> row;
      for (size_t i = 0; i < m.rows(); ++i) {
        row.clear();
        for (size_t j = 0; j < m.cols(); ++j)
          if (!m.is_zero(i, j)) row.emplace_back(static_cast<uint32_t>(j), m.get(i, j));
        ech.insert_rational(row);
        if (ech.rank() == m.cols()) break;
      }
      return ech.rank();
    }
  }
  return 0;
}

ExactMatrix rref(const ExactMatrix& m, std::vector<size_t>* pivots) {
  if (!m.ring().is_field()) throw InputError("rref needs a field");
  const size_t R = m.rows(), C = m.cols();
  std::vector<size_t> piv;
  if (m.ring().kind == RingKind::Fp) {
    const uint32_t p = m.ring().p;
    const auto& K = kernels::active();
    std::vector<uint32_t> a = m.f_data();
    size_t r = 0;
    for (size_t c = 0; c < C && r < R; ++c) {
      size_t pr = R;
      for (size_t i = r; i < R; ++i)
        if (a[i * C + c] != 0) { pr = i; break; }
      if (pr == R) continue;
      if (pr != r) std::swap_ranges(a.begin() + pr * C, a.begin() + (pr + 1) * C, a.begin() + r * C);
      K.scale(&a[r * C], inv_mod(a[r * C + c], p), C, p);
      for (size_t i = 0; i < R; ++i) {
        if (i == r) continue;
        uint32_t v = a[i * C + c];
        if (v != 0) K.axpy(&a[i * C], &a[r * C], p - v, C, p);
      }
      piv.push_back(c);
      ++r;
    }
    ExactMatrix out(m.ring(), R, C);
    for (size_t i = 0; i < R; ++i)
      for (size_t j = 0; j < C; ++j) out.set_fp(i, j, a[i * C + j]);
    if (pivots) *pivots = piv;
    return out;
  }
  std::vector<Rational> a = m.q_data();
  size_t r = 0;
  Rational t;
  for (size_t c = 0; c < C && r < R; ++c) {
    size_t pr = R;
    for (size_t i = r; i < R; ++i)
      if (sgn(a[i * C + c]) != 0) { pr = i; break; }
    if (pr == R) continue;
    if (pr != r)
      for (size_t j = 0; j < C; ++j) std::swap(a[pr * C + j], a[r * C + j]);
    Rational inv = 1 / a[r * C + c];
    for (size_t j = c; j < C; ++j)
      if (sgn(a[r * C + j]) != 0) a[r * C + j] *= inv;
    for (size_t i = 0; i < R; ++i) {
      if (i == r || sgn(a[i * C + c]) == 0) continue;
      Rational f = a[i * C + c];
      for (size_t j = c; j < C; ++j)
        if (sgn(a[r * C + j]) != 0) a[i * C + j] -= f * a[r * C + j];
    }
    piv.push_back(c);
    ++r;
  }
  ExactMatrix out(m.ring(), R, C);
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j)
      if (sgn(a[i * C + j]) != 0) out.set(i, j, a[i * C + j]);
  if (pivots) *pivots = piv;
  return out;
}

ExactMatrix kernel_basis(const ExactMatrix& m) {
  std::vector<size_t> piv;
  ExactMatrix e = rref(m, &piv);
  const size_t C = m.cols();
  std::vector<char> is_piv(C, 0);
  for (size_t c : piv) is_piv[c] = 1;
  std::vector<size_t> free_cols;
  for (size_t c = 0; c < C; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  ExactMatrix k(m.ring(), C, free_cols.size());
  for (size_t f = 0; f < free_cols.size(); ++f) {
    size_t fc = free_cols[f];
    k.set(fc, f, 1L);
    for (size_t r = 0; r < piv.size(); ++r) {
      if (e.is_zero(r, fc)) continue;
      if (m.ring().kind == RingKind::Fp)
        k.set_fp(piv[r], f, sub_mod(0, e.fp(r, fc), m.ring().p));
      else
        k.set(piv[r], f, -e.get(r, fc));
    }
  }
  return k;
}

// ---- Smith normal form -----------------------------------------------------

namespace {

std::vector<Integer> dense_smith(std::vector<std::vector<Integer>> a) {
  std::vector<Integer> diag;
  const size_t R = a.size();
  const size_t C = R ? a[0].size() : 0;
  size_t t = 0;
  while (t < R && t < C) {
    // smallest nonzero entry of the trailing block becomes the pivot
    size_t bi = R, bj = C;
    for (size_t i = t; i < R; ++i)
      for (size_t j = t; j < C; ++j)
        if (sgn(a[i][j]) != 0 && (bi == R || mpz_cmpabs(a[i][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0)) bi = i, bj = j;
    if (bi == R) break;
    std::swap(a[t], a[bi]);
    for (size_t i = 0; i < R; ++i) std::swap(a[i][t], a[i][bj]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < R; ++i) {
        if (sgn(a[i][t]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (size_t j = t; j < C; ++j)
          if (sgn(a[t][j]) != 0) a[i][j] -= q * a[t][j];
        if (sgn(a[i][t]) != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < C; ++j) {
        if (sgn(a[t][j]) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (size_t i = t; i < R; ++i)
          if (sgn(a[i][t]) != 0) a[i][j] -= q * a[i][t];
        if (sgn(a[t][j]) != 0) {
          for (size_t i = 0; i < R; ++i) std::swap(a[i][t], a[i][j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // pivot must divide the rest of the block
      for (size_t i = t + 1; i < R && clean; ++i)
        for (size_t j = t + 1; j < C; ++j)
          if (sgn(a[i][j]) != 0 && !mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
            for (size_t k = t; k < C; ++k) a[t][k] += a[i][k];
            clean = false;
            break;
          }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  // enforce the divisibility chain
  for (size_t i = 0; i < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      Integer g = gcd(diag[i], diag[j]);
      Integer l = lcm(diag[i], diag[j]);
      diag[i] = g, diag[j] = l;
    }
  return diag;
}

}  // namespace

std::vector<Integer> smith_normal_form(const ExactMatrix& m) {
  if (m.ring().kind == RingKind::Fp) throw InputError("smith_normal_form needs integer entries");
  const size_t R = m.rows(), C = m.cols();
  std::vector<std::map<uint32_t, Integer>> rows(R);
  std::vector<std::set<uint32_t>> col_rows(C);
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) {
      if (m.is_zero(i, j)) continue;
      Rational v = m.get(i, j);
      if (v.get_den() != 1) throw InputError("smith_normal_form: non-integer entry");
      rows[i][static_cast<uint32_t>(j)] = v.get_num();
      col_rows[j].insert(static_cast<uint32_t>(i));
    }
  std::vector<char> row_alive(R, 1), col_alive(C, 1);
  size_t units = 0;
  // Unit pivots are removed by unimodular operations; Markowitz choice keeps fill low.
  for (;;) {
    size_t best_i = R, best_j = C, best_cost = SIZE_MAX;
    for (size_t i = 0; i < R; ++i) {
      if (!row_alive[i]) continue;
      for (auto& [j, v] : rows[i]) {
        if (mpz_cmpabs_ui(v.get_mpz_t(), 1) != 0) continue;
        size_t cost = (rows[i].size() - 1) * (col_rows[j].size() - 1);
        if (cost < best_cost) best_cost = cost, best_i = i, best_j = j;
        if (cost == 0) break;
      }
      if (best_cost == 0) break;
    }
    if (best_i == R) break;
    const auto pivot_row = rows[best_i];
    const Integer pv = pivot_row.at(static_cast<uint32_t>(best_j));
    std::vector<uint32_t> targets(col_rows[best_j].begin(), col_rows[best_j].end());
    for (uint32_t i : targets) {
      if (i == best_i) continue;
      Integer f = rows[i][static_cast<uint32_t>(best_j)] * pv;  // pv = +-1 so pv^{-1} = pv
      for (auto& [j, v] : pivot_row) {
        Integer& dst = rows[i][j];
        bool was_zero = sgn(dst) == 0;
        dst -= f * v;
        if (sgn(dst) == 0) {
          rows[i].erase(j);
          col_rows[j].erase(i);
        } else if (was_zero) {
          col_rows[j].insert(i);
        }
      }
    }
    for (auto& [j, v] : pivot_row) col_rows[j].erase(static_cast<uint32_t>(best_i));
    rows[best_i].clear();
    row_alive[best_i] = 0;
    col_alive[best_j] = 0;
    ++units;
  }
  std::vector<size_t> live_rows, live_cols;
  for (size_t i = 0; i < R; ++i)
    if (row_alive[i] && !rows[i].empty()) live_rows.push_back(i);
  std::vector<long> col_index(C, -1);
  for (size_t j = 0; j < C; ++j)
    if (col_alive[j] && !col_rows[j].empty()) {
      col_index[j] = static_cast<long>(live_cols.size());
      live_cols.push_back(j);
    }
  std::vector<std::vector<Integer>> core(live_rows.size(), std::vector<Integer>(live_cols.size(), 0));
  for (size_t a = 0; a < live_rows.size(); ++a)
    for (auto& [j, v] : rows[live_rows[a]]) core[a][col_index[j]] = v;
  std::vector<Integer> out(units, Integer(1));
  for (auto& d : dense_smith(std::move(core))) out.push_back(d);
  return out;
}

}  // namespace mres

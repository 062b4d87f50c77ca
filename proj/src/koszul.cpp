#include "mres/koszul.hpp"

#include <algorithm>
#include <memory>
#include <string>
#include <unordered_map>

namespace mres {

namespace {

using Row = std::vector<std::pair<uint32_t, Rational>>;

// rank of sparse rows over Q or F_p, incremental
class SparseRank {
 public:
  SparseRank(Ring r, size_t cols) : ring_(r) {
    if (r.kind == RingKind::Fp)
      fp_ = std::make_unique<EchelonFp>(r.p, cols);
    else
      q_ = std::make_unique<EchelonQ>(cols);
  }
  bool insert(const Row& row) {
    if (q_) return q_->insert_rational(row);
    SparseRowFp f;
    f.reserve(row.size());
    for (auto& [c, v] : row) {
      uint32_t x = static_cast<uint32_t>(normalize(v, ring_).get_num().get_ui());
      if (x) f.emplace_back(c, x);
    }
    return fp_->insert(std::move(f));
  }
  size_t rank() const { return q_ ? q_->rank() : fp_->rank(); }

  // basis of {x : every inserted row . x = 0}, by back substitution
  std::vector<std::vector<Rational>> kernel(size_t cols) const {
    std::vector<std::pair<uint32_t, std::vector<std::pair<uint32_t, Rational>>>> rows;  // (lead, row)
    if (q_) {
      for (auto& r : q_->rows()) {
        Row x;
        for (auto& [c, v] : r) x.emplace_back(c, Rational(v));
        rows.emplace_back(r.front().first, std::move(x));
      }
    } else {
      for (auto& r : fp_->rows()) {
        Row x;
        for (auto& [c, v] : r) x.emplace_back(c, Rational(v));
        rows.emplace_back(r.front().first, std::move(x));
      }
    }
    std::sort(rows.begin(), rows.end(), [](auto& a, auto& b) { return a.first > b.first; });
    std::vector<bool> pivot(cols, false);
    for (auto& r : rows) pivot[r.first] = true;
    std::vector<std::vector<Rational>> out;
    for (size_t f = 0; f < cols; ++f) {
      if (pivot[f]) continue;
      std::vector<Rational> x(cols);
      x[f] = 1;
      for (auto& [lead, r] : rows) {
        Rational s = 0;
        for (size_t t = 1; t < r.size(); ++t)
          if (sgn(x[r[t].first]) != 0) s += r[t].second * x[r[t].first];
        if (sgn(s) != 0) x[lead] = normalize(-s / r.front().second, ring_);
      }
      out.push_back(std::move(x));
    }
    return out;
  }

 private:
  Ring ring_;
  std::unique_ptr<EchelonQ> q_;
  std::unique_ptr<EchelonFp> fp_;
};

// monomials of degree d in n variables, with a lookup table
struct Monomials {
  std::vector<std::string> list;
  std::unordered_map<std::string, uint32_t> index;
  Monomials(size_t n, int d) {
    if (d < 0) return;
    std::string e(n, '\0');
    gen(e, 0, d);
    for (size_t i = 0; i < list.size(); ++i) index.emplace(list[i], static_cast<uint32_t>(i));
  }
  void gen(std::string& e, size_t i, int left) {
    if (i + 1 == e.size() || e.empty()) {
      if (!e.empty()) e[i] = static_cast<char>(left);
      if (!e.empty() || left == 0) list.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = static_cast<char>(k);
      gen(e, i + 1, left - k);
    }
    e[i] = 0;
  }
  size_t size() const { return list.size(); }
  uint32_t times(const std::string& m, size_t var) const {
    std::string t = m;
    t[var]++;
    return index.at(t);
  }
};

// rank of the strand map A_{k+1} (x) S_{j} -> A_k (x) S_{j+1} of the dual universal complex
size_t strand_rank(const OSAlgebra& a, int k, int j) {
  if (k < 0 || j < 0 || a.dim(k) == 0 || a.dim(k + 1) == 0) return 0;
  const size_t n = a.n();
  Monomials src(n, j), dst(n, j + 1);
  std::vector<ExactMatrix> L;
  for (size_t i = 0; i < n; ++i) L.push_back(a.left_mult(i, k));
  SparseRank rk(a.ring(), a.dim(k) * dst.size());
  for (size_t v = 0; v < a.dim(k + 1); ++v)
    for (const auto& m : src.list) {
      Row row;
      for (size_t i = 0; i < n; ++i) {
        uint32_t mi = dst.times(m, i);
        for (size_t u = 0; u < a.dim(k); ++u)
          if (!L[i].is_zero(v, u)) row.emplace_back(static_cast<uint32_t>(u * dst.size() + mi), L[i].get(v, u));
      }
      rk.insert(row);
    }
  return rk.rank();
}

}  // namespace

size_t koszul_module_dim(const OSAlgebra& a, int q, int d) {
  if (q < 0 || d < 0 || a.dim(q) == 0) return 0;
  const int deg = d + q;
  size_t total = a.dim(q) * Monomials(a.n(), deg).size();
  return total - strand_rank(a, q, deg - 1) - strand_rank(a, q - 1, deg);
}

size_t W1Presentation::pair_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  return static_cast<size_t>(i) * (2 * n - i - 1) / 2 + (j - i - 1);
}

W1Presentation w1_presentation(const OSAlgebra& a) {
  W1Presentation w;
  w.ring = a.ring();
  w.n = a.n();
  const int n = static_cast<int>(a.n());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) w.pairs.emplace_back(i, j);
  const size_t P = w.pairs.size();
  if (a.dim(2) == 0 || P == 0) {
    w.kperp = ExactMatrix::identity(a.ring(), P);
    w.k = ExactMatrix(a.ring(), P, 0);
  } else {
    ExactMatrix mult(a.ring(), a.dim(2), P);
    for (size_t c = 0; c < P; ++c) {
      auto co = a.coordinates(monomial(bit(w.pairs[c].first) | bit(w.pairs[c].second)), 2);
      for (size_t r = 0; r < co.size(); ++r)
        if (sgn(co[r]) != 0) mult.set(r, c, co[r]);
    }
    w.kperp = kernel_basis(mult);
    w.k = w.kperp.cols() ? kernel_basis(w.kperp.transpose()) : ExactMatrix::identity(a.ring(), P);
  }
  size_t T = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) ++T;
  w.relations = LinearMatrix(a.ring(), P, T + w.k.cols(), w.n);
  size_t t = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k, ++t) {
        w.relations.add(w.pair_index(j, k), t, i, 1);
        w.relations.add(w.pair_index(i, k), t, j, -1);
        w.relations.add(w.pair_index(i, j), t, k, 1);
      }
  for (size_t c = 0; c < w.k.cols(); ++c)
    for (size_t r = 0; r < P; ++r)
      if (!w.k.is_zero(r, c)) w.relations.add(r, T + c, LinearMatrix::kConstant, w.k.get(r, c));
  return w;
}

size_t w1_cokernel_dim(const W1Presentation& w, int d) {
  if (d < 0) return 0;
  const size_t n = w.n, P = w.pairs.size();
  Monomials Sd(n, d), Sd1(n, d - 1);
  SparseRank rk(w.ring, P * Sd.size());
  for (size_t c = 0; c < w.k.cols(); ++c)
    for (size_t m = 0; m < Sd.size(); ++m) {
      Row row;
      for (size_t r = 0; r < P; ++r)
        if (!w.k.is_zero(r, c)) row.emplace_back(static_cast<uint32_t>(r * Sd.size() + m), w.k.get(r, c));
      rk.insert(row);
    }
  const int N = static_cast<int>(n);
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j)
      for (int k = j + 1; k < N; ++k)
        for (const auto& m : Sd1.list) {
          Row row{{static_cast<uint32_t>(w.pair_index(j, k) * Sd.size() + Sd.times(m, i)), 1},
                  {static_cast<uint32_t>(w.pair_index(i, k) * Sd.size() + Sd.times(m, j)), -1},
                  {static_cast<uint32_t>(w.pair_index(i, j) * Sd.size() + Sd.times(m, k)), 1}};
          rk.insert(row);
        }
  return P * Sd.size() - rk.rank();
}

bool w1_support_contains(const W1Presentation& w, const std::vector<Rational>& a) {
  return rank_of(w.relations.evaluate(a)) < w.pairs.size();
}

W1SupportProbe::W1SupportProbe(const W1Presentation& w)
    : n_(w.n),
      m_(w.kperp.cols()),
      p_(w.ring.p),
      ech_(w.ring.p ? w.ring.p : 2, n_ >= 1 ? (n_ - 1) * (n_ >= 2 ? n_ - 2 : 0) / 2 : 0) {
  if (w.ring.kind != RingKind::Fp) throw InputError("W1SupportProbe works over F_p");
  const int n = static_cast<int>(n_);
  const size_t rows = ech_.cols();
  for (int f = 0; f < n; ++f) {
    LinearMatrix L(w.ring, rows, m_, n_);
    size_t r = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        if (i == f || j == f) continue;
        int t[3] = {f, i, j};
        std::sort(t, t + 3);
        for (size_t u = 0; u < m_; ++u) {
          L.add(r, u, t[0], w.kperp.get(w.pair_index(t[1], t[2]), u));
          L.add(r, u, t[1], -w.kperp.get(w.pair_index(t[0], t[2]), u));
          L.add(r, u, t[2], w.kperp.get(w.pair_index(t[0], t[1]), u));
        }
        ++r;
      }
    pairing_.push_back(std::move(L));
  }
  buf_.resize(rows * m_);
}

bool W1SupportProbe::contains(const uint32_t* a) {
  size_t f = 0;
  while (f < n_ && a[f] == 0) ++f;
  if (f == n_ || ech_.cols() == 0) return m_ > 0;
  pairing_[f].evaluate_transposed_fp(a, buf_.data());
  ech_.reset();
  for (size_t u = 0; u < m_; ++u)
    if (!ech_.insert(buf_.data() + u * ech_.cols())) return true;
  return false;
}

ResonancePointSet w1_support_point_set(const W1Presentation& w, const EnumerationOptions& opt) {
  auto factory = [&]() -> PointPredicate {
    auto probe = std::make_shared<W1SupportProbe>(w);
    return [probe](const uint32_t* x) { return probe->contains(x); };
  };
  ResonancePointSet out = enumerate_points(w.n, w.ring.p, Ambient::Projective, factory, opt);
  out.q = 1;
  out.s = 1;
  return out;
}

std::vector<size_t> chen_ranks_inverse(const OSAlgebra& a, int rmax) {
  std::vector<size_t> theta;
  if (rmax < 2) return theta;
  const Ring R = a.ring();
  W1Presentation w = w1_presentation(a);
  const size_t n = a.n();
  const int N = static_cast<int>(n);
  const size_t m0 = w.kperp.cols();
  theta.push_back(m0);
  if (rmax < 3 || m0 == 0) {
    theta.resize(rmax - 1, 0);
    return theta;
  }
  // C[k] : coordinates of x_k contracted into the current basis, in the previous basis
  // (rows = previous basis, cols = current basis)
  std::vector<std::vector<std::vector<Rational>>> C;
  size_t prev = m0, cur = 0;
  {
    SparseRank rk(R, n * m0);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j)
        for (int k = j + 1; k < N; ++k) {
          Row row;
          size_t jk = w.pair_index(j, k), ik = w.pair_index(i, k), ij = w.pair_index(i, j);
          for (size_t u = 0; u < m0; ++u) {
            if (!w.kperp.is_zero(jk, u)) row.emplace_back(static_cast<uint32_t>(i * m0 + u), w.kperp.get(jk, u));
            if (!w.kperp.is_zero(ik, u)) row.emplace_back(static_cast<uint32_t>(j * m0 + u), -w.kperp.get(ik, u));
            if (!w.kperp.is_zero(ij, u)) row.emplace_back(static_cast<uint32_t>(k * m0 + u), w.kperp.get(ij, u));
          }
          std::sort(row.begin(), row.end(), [](auto& x, auto& y) { return x.first < y.first; });
          // merge duplicate columns
          Row merged;
          for (auto& e : row) {
            if (!merged.empty() && merged.back().first == e.first)
              merged.back().second += e.second;
            else
              merged.push_back(e);
          }
          rk.insert(merged);
        }
    auto ker = rk.kernel(n * m0);
    cur = ker.size();
    C.assign(n, std::vector<std::vector<Rational>>(m0, std::vector<Rational>(cur)));
    for (size_t b = 0; b < cur; ++b)
      for (size_t k = 0; k < n; ++k)
        for (size_t u = 0; u < m0; ++u) C[k][u][b] = ker[b][k * m0 + u];
  }
  theta.push_back(cur);
  for (int r = 4; r <= rmax; ++r) {
    if (cur == 0) {
      theta.push_back(0);
      continue;
    }
    // unknowns c[i][j], i < n, j < cur; for i < k: sum_j c_ij C_k[., j] = sum_j c_kj C_i[., j]
    SparseRank rk(R, n * cur);
    for (size_t i = 0; i < n; ++i)
      for (size_t k = i + 1; k < n; ++k)
        for (size_t row = 0; row < prev; ++row) {
          Row eq;
          for (size_t j = 0; j < cur; ++j)
            if (sgn(C[k][row][j]) != 0) eq.emplace_back(static_cast<uint32_t>(i * cur + j), C[k][row][j]);
          for (size_t j = 0; j < cur; ++j)
            if (sgn(C[i][row][j]) != 0) eq.emplace_back(static_cast<uint32_t>(k * cur + j), -C[i][row][j]);
          if (!eq.empty()) rk.insert(eq);
        }
    auto ker = rk.kernel(n * cur);
    size_t next = ker.size();
    std::vector<std::vector<std::vector<Rational>>> D(n, std::vector<std::vector<Rational>>(cur, std::vector<Rational>(next)));
    for (size_t b = 0; b < next; ++b)
      for (size_t k = 0; k < n; ++k)
        for (size_t j = 0; j < cur; ++j) D[k][j][b] = ker[b][k * cur + j];
    C = std::move(D);
    prev = cur;
    cur = next;
    theta.push_back(cur);
  }
  return theta;
}

}  // namespace mres

#include "mres/lie.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>

#include "mres/koszul.hpp"
#include "mres/os_algebra.hpp"
#include "mres/series.hpp"

namespace mres {

namespace {

using Expansion = std::vector<std::pair<uint64_t, Integer>>;

uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Expansion concat_bracket(const Expansion& a, int la, const Expansion& b, int lb, uint64_t n) {
  std::map<uint64_t, Integer> acc;
  uint64_t sa = ipow(n, la), sb = ipow(n, lb);
  for (auto& [u, c] : a)
    for (auto& [v, d] : b) {
      acc[u * sb + v] += c * d;
      acc[v * sa + u] -= c * d;
    }
  Expansion out;
  for (auto& [w, c] : acc)
    if (sgn(c) != 0) out.emplace_back(w, c);
  return out;
}

// Z-lattice in echelon form; rows keep a Z-basis of everything inserted
class LatticeEchelon {
 public:
  explicit LatticeEchelon(size_t cols) : pivot_(cols, -1) {}
  bool insert(SparseVecZ row) {
    std::erase_if(row, [](auto& e) { return sgn(e.second) == 0; });
    std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
    while (!row.empty()) {
      uint32_t c = row.front().first;
      if (pivot_[c] < 0) {
        if (row.front().second < 0)
          for (auto& e : row) e.second = -e.second;
        pivot_[c] = static_cast<int64_t>(rows_.size());
        rows_.push_back(std::move(row));
        return true;
      }
      SparseVecZ& P = rows_[pivot_[c]];
      Integer a = P.front().second, b = row.front().second;
      if (mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        row = combine(row, 1, P, -(b / a));
        continue;
      }
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      SparseVecZ newP = combine(P, s, row, t);  // lead g
      SparseVecZ rest = combine(row, a / g, P, -(b / g));
      P = std::move(newP);
      if (P.front().second < 0)
        for (auto& e : P) e.second = -e.second;
      row = std::move(rest);
    }
    return false;
  }
  size_t rank() const { return rows_.size(); }
  const std::vector<SparseVecZ>& rows() const { return rows_; }

 private:
  static SparseVecZ combine(const SparseVecZ& x, const Integer& a, const SparseVecZ& y, const Integer& b) {
    SparseVecZ out;
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
      if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
        Integer v = a * x[i].second;
        if (sgn(v)) out.emplace_back(x[i].first, v);
        ++i;
      } else if (i == x.size() || y[j].first < x[i].first) {
        Integer v = b * y[j].second;
        if (sgn(v)) out.emplace_back(y[j].first, v);
        ++j;
      } else {
        Integer v = a * x[i].second + b * y[j].second;
        if (sgn(v)) out.emplace_back(x[i].first, v);
        ++i, ++j;
      }
    }
    return out;
  }
  std::vector<int64_t> pivot_;
  std::vector<SparseVecZ> rows_;
};

// span of rows over Q, F_p or Z, behind one interface
class Span {
 public:
  Span(Ring r, size_t cols) : ring_(r) {
    if (r.kind == RingKind::Q) q_ = std::make_unique<EchelonQ>(cols);
    if (r.kind == RingKind::Fp) f_ = std::make_unique<EchelonFp>(r.p, cols);
    if (r.kind == RingKind::Z) z_ = std::make_unique<LatticeEchelon>(cols);
  }
  bool insert(const SparseVecZ& row) {
    if (q_) return q_->insert(row);
    if (z_) return z_->insert(row);
    {
      SparseRowFp f;
      for (auto& [c, v] : row) {
        Integer m = v % ring_.p;
        if (m < 0) m += ring_.p;
        if (m != 0) f.emplace_back(c, static_cast<uint32_t>(m.get_ui()));
      }
      return f_->insert(std::move(f));
    }
  }
  size_t rank() const { return q_ ? q_->rank() : z_ ? z_->rank() : f_->rank(); }
  std::vector<SparseVecZ> rows() const {
    if (q_) return q_->rows();
    if (z_) return z_->rows();
    std::vector<SparseVecZ> out;
    for (auto& r : f_->rows()) {
      SparseVecZ z;
      for (auto& [c, v] : r) z.emplace_back(c, Integer(v));
      out.push_back(std::move(z));
    }
    return out;
  }

 private:
  Ring ring_;
  std::unique_ptr<EchelonQ> q_;
  std::unique_ptr<EchelonFp> f_;
  std::unique_ptr<LatticeEchelon> z_;
};

}  // namespace

LyndonBasis::LyndonBasis(size_t n, int rmax) : n_(n), rmax_(rmax) {
  if (n > 255) throw InputError("Lyndon basis: too many generators");
  if (rmax < 1) rmax_ = rmax = 1;
  double words = 1;
  for (int i = 0; i < rmax; ++i) words *= static_cast<double>(std::max<size_t>(n, 1));
  if (words > 2e7) throw BudgetExceeded("Lyndon basis: n^r = " + std::to_string(words) + " exceeds the budget");
  words_.resize(rmax + 1);
  split_len_.resize(rmax + 1);
  split_left_.resize(rmax + 1);
  split_right_.resize(rmax + 1);
  exp_.resize(rmax + 1);
  index_.resize(rmax + 1);
  ad_.resize(rmax + 1);
  if (n == 0) return;
  // Duval: all Lyndon words of length <= rmax in lexicographic order
  std::vector<int> w{-1};
  while (!w.empty()) {
    w.back() += 1;
    words_[w.size()].emplace_back(w.begin(), w.end());
    size_t m = w.size();
    while (w.size() < static_cast<size_t>(rmax)) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == static_cast<int>(n) - 1) w.pop_back();
  }
  auto code = [&](const uint8_t* b, size_t len) {
    uint64_t c = 0;
    for (size_t i = 0; i < len; ++i) c = c * n + b[i];
    return c;
  };
  for (int r = 1; r <= rmax; ++r) {
    for (size_t i = 0; i < words_[r].size(); ++i) index_[r][code(words_[r][i].data(), r)] = static_cast<uint32_t>(i);
    for (size_t i = 0; i < words_[r].size(); ++i) {
      const auto& wd = words_[r][i];
      if (r == 1) {
        split_len_[r].push_back(0);
        split_left_[r].push_back(0);
        split_right_[r].push_back(0);
        exp_[r].push_back({{wd[0], Integer(1)}});
        continue;
      }
      for (int k = 1; k < r; ++k) {
        auto it = index_[r - k].find(code(wd.data() + k, r - k));
        if (it == index_[r - k].end()) continue;
        size_t left = index_[k].at(code(wd.data(), k));
        split_len_[r].push_back(k);
        split_left_[r].push_back(left);
        split_right_[r].push_back(it->second);
        exp_[r].push_back(concat_bracket(exp_[k][left], k, exp_[r - k][it->second], r - k, n));
        break;
      }
    }
  }
  for (int r = 1; r < rmax; ++r) {
    ad_[r].resize(words_[r].size() * n);
    for (size_t idx = 0; idx < words_[r].size(); ++idx)
      for (size_t i = 0; i < n; ++i) {
        Expansion xi{{i, Integer(1)}};
        ad_[r][idx * n + i] = coordinates(r + 1, concat_bracket(xi, 1, exp_[r][idx], r, n));
      }
  }
}

std::string LyndonBasis::bracketing(int r, size_t i) const {
  if (r == 1) return "x" + std::to_string(words_[1][i][0] + 1);
  int k = split_len_[r][i];
  return "[" + bracketing(k, split_left_[r][i]) + "," + bracketing(r - k, split_right_[r][i]) + "]";
}

SparseVecZ LyndonBasis::coordinates(int r, std::vector<std::pair<uint64_t, Integer>> expansion) const {
  std::map<uint64_t, Integer> f;
  for (auto& [w, c] : expansion)
    if (sgn(c)) f[w] += c;
  SparseVecZ out;
  while (!f.empty()) {
    auto [w, c] = *f.begin();
    if (sgn(c) == 0) {
      f.erase(f.begin());
      continue;
    }
    auto it = index_[r].find(w);
    if (it == index_[r].end()) throw ConsistencyError("Lyndon coordinates: element is not in the free Lie ring");
    out.emplace_back(it->second, c);
    for (auto& [u, d] : exp_[r][it->second]) {
      auto& slot = f[u];
      slot -= c * d;
      if (sgn(slot) == 0) f.erase(u);
    }
  }
  return out;
}

HolonomyPresentation holonomy_relations(const Matroid& m) {
  HolonomyPresentation h;
  h.n = m.size();
  const size_t n = m.size();
  auto pair_index = [&](size_t i, size_t j) {
    if (i > j) std::swap(i, j);
    return static_cast<uint32_t>(i * (2 * n - i - 1) / 2 + (j - i - 1));
  };
  FlatLattice L(m);
  for (size_t f : L.level(2)) {
    ElemSet X = L.flat(f).elements;
    for (int u : elements_of(X)) {
      SparseVecZ rel;
      for (int v : elements_of(X))
        if (v != u) rel.emplace_back(pair_index(u, v), Integer(u < v ? 1 : -1));
      std::sort(rel.begin(), rel.end(), [](auto& a, auto& b) { return a.first < b.first; });
      h.relations.push_back(std::move(rel));
      h.flats.push_back(X);
    }
  }
  // compare with the annihilator of ker(E^2 -> A^2)
  if (n >= 2) {
    OSAlgebra A(m, Ring::rationals(), std::min(2, m.rank()));
    W1Presentation w = w1_presentation(A);
    const size_t P = n * (n - 1) / 2;
    EchelonQ rel(P), both(P);
    for (auto& r : h.relations) rel.insert(r), both.insert(r);
    for (size_t c = 0; c < w.k.cols(); ++c) {
      std::vector<std::pair<uint32_t, Rational>> row;
      for (size_t r = 0; r < P; ++r)
        if (!w.k.is_zero(r, c)) row.emplace_back(static_cast<uint32_t>(r), w.k.get(r, c));
      both.insert_rational(row);
    }
    if (rel.rank() != w.k.cols() || both.rank() != rel.rank())
      throw ConsistencyError("holonomy relations do not span the image of the dual multiplication map");
  }
  return h;
}

size_t GradedPieceReport::dim_mod(uint32_t p) const {
  size_t d = dim;
  for (auto& t : torsion)
    if (mpz_divisible_ui_p(t.get_mpz_t(), p)) ++d;
  return d;
}

std::vector<GradedPieceReport> holonomy_ranks(const Matroid& m, int R, Ring ring) {
  std::vector<GradedPieceReport> out;
  if (R < 1) return out;
  const size_t n = m.size();
  LyndonBasis lb(n, R);
  GradedPieceReport g1;
  g1.degree = 1;
  g1.ring = ring;
  g1.dim = n;
  out.push_back(g1);
  if (R < 2) return out;
  HolonomyPresentation h = holonomy_relations(m);
  auto span = std::make_unique<Span>(ring, lb.dim(2));
  for (auto& r : h.relations) span->insert(r);
  for (int r = 2; r <= R; ++r) {
    if (r > 2) {
      auto prev = span->rows();
      span = std::make_unique<Span>(ring, lb.dim(r));
      for (auto& b : prev)
        for (size_t i = 0; i < n; ++i) {
          std::map<uint32_t, Integer> acc;
          for (auto& [k, c] : b)
            for (auto& [j, d] : lb.ad(i, r - 1, k)) acc[j] += c * d;
          SparseVecZ g;
          for (auto& [j, v] : acc)
            if (sgn(v)) g.emplace_back(j, v);
          if (!g.empty()) span->insert(g);
        }
    }
    GradedPieceReport rep;
    rep.degree = r;
    rep.ring = ring;
    rep.dim = lb.dim(r) - span->rank();
    if (ring.kind == RingKind::Z && span->rank() > 0) {
      auto rows = span->rows();
      ExactMatrix M(Ring::integers(), rows.size(), lb.dim(r));
      for (size_t i = 0; i < rows.size(); ++i)
        for (auto& [j, v] : rows[i]) M.set(i, j, Rational(v));
      for (auto& d : smith_normal_form(M))
        if (d != 1) rep.torsion.push_back(d);
    }
    out.push_back(rep);
  }
  return out;
}

GradedPieceReport holonomy_rank(const Matroid& m, int r, Ring ring) { return holonomy_ranks(m, r, ring).at(r - 1); }

Integer local_holonomy_rank(const FlatLattice& L, int r) {
  Integer s = 0;
  for (size_t f : L.level(2)) {
    long mu = L.flat(f).mobius;
    if (mu >= 2) s += witt_number(mu, r);
  }
  return s;
}

Integer local_chen_rank(const FlatLattice& L, int r) {
  Integer s = 0;
  for (size_t f : L.level(2)) {
    long mu = L.flat(f).mobius;
    if (mu >= 2) s += binomial(mu + r - 2, r);
  }
  return s * (r - 1);
}

bool is_decomposable(const Matroid& m, Ring ring) {
  if (m.size() < 3) return true;
  return Integer(holonomy_rank(m, 3, ring).dim) == local_holonomy_rank(FlatLattice(m), 3);
}

bool is_decomposable_z(const Matroid& m, const std::vector<uint32_t>& primes) {
  if (!is_decomposable(m, Ring::rationals())) return false;
  for (uint32_t p : primes)
    if (!is_decomposable(m, Ring::prime(p))) return false;
  return true;
}

std::vector<size_t> chen_ranks(const Matroid& m, int R, Ring ring) {
  OSAlgebra a(m, ring, std::min(2, m.rank()));
  return chen_ranks_inverse(a, R);
}

size_t clique_count(const Graph& g, int s) {
  if (s <= 0) return s == 0;
  if (g.vertices > 30) throw InputError("clique_count: too many vertices");
  std::vector<uint32_t> adj(g.vertices, 0);
  for (auto [a, b] : g.edges)
    if (a != b) adj[a] |= 1u << b, adj[b] |= 1u << a;
  size_t count = 0;
  // extend cliques in increasing vertex order
  auto rec = [&](auto&& self, uint32_t cand, int left) -> void {
    if (left == 0) {
      ++count;
      return;
    }
    while (cand) {
      int v = std::countr_zero(cand);
      cand &= cand - 1;
      self(self, cand & adj[v], left - 1);
    }
  };
  rec(rec, g.vertices >= 32 ? ~0u : (1u << g.vertices) - 1, s);
  return count;
}

Integer chen_closed_form(ChenKind kind, long n, int r, const Graph* g) {
  if (r < 1) throw InputError("chen_closed_form: r must be positive");
  switch (kind) {
    case ChenKind::Free:
      return r == 1 ? Integer(n) : Integer(r - 1) * binomial(n + r - 2, r);
    case ChenKind::Uniform2:
      return r == 1 ? Integer(n) : Integer(r - 1) * binomial(n + r - 3, r);
    case ChenKind::Graphic: {
      if (!g) throw InputError("chen_closed_form: graphic kind needs a graph");
      if (r == 1) return Integer(clique_count(*g, 2));
      size_t k3 = clique_count(*g, 3);
      if (r == 2) return Integer(k3);
      return Integer(r - 1) * Integer(k3 + clique_count(*g, 4));
    }
  }
  throw InputError("chen_closed_form: unknown kind");
}

std::vector<Integer> lcs_from_betti(const Matroid& m, int R) {
  FlatLattice L(m);
  if (!L.is_supersolvable()) throw InputError("lcs_from_betti: the matroid is not supersolvable");
  auto b = betti_numbers(L);
  Series s(R + 1, 0);
  for (size_t k = 0; k < b.size() && k <= static_cast<size_t>(R); ++k) s[k] = k % 2 ? Integer(-b[k]) : b[k];
  return solve_exponents(s);
}

std::vector<Integer> graphic_exponents(const Graph& g) {
  std::vector<Integer> kappa(g.vertices + 2, 0);
  for (int s = 1; s <= g.vertices; ++s) kappa[s] = Integer(clique_count(g, s));
  std::vector<Integer> e(std::max(g.vertices, 1), 0);  // e[j-1] for j = 1..vertices-1
  for (int j = 1; j < g.vertices; ++j)
    for (int s = j; s + 1 <= g.vertices; ++s)
      e[j - 1] += ((s - j) % 2 ? -1 : 1) * binomial(s, j) * kappa[s + 1];
  e.resize(g.vertices > 1 ? g.vertices - 1 : 0);
  return e;
}

std::vector<Integer> glcs_graphic(const Graph& g, int R) {
  auto e = graphic_exponents(g);
  Series s(R + 1, 0);
  s[0] = 1;
  for (size_t j = 0; j < e.size(); ++j) s = series_mul(s, power_of_linear(static_cast<long>(j + 1), e[j], R), R);
  return solve_exponents(s);
}

}  // namespace mres

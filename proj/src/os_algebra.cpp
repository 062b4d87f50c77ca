#include "mres/os_algebra.hpp"

#include <algorithm>

#include "mres/series.hpp"

namespace mres {

int wedge_sign(ElemSet s, ElemSet t) {
  if (s & t) return 0;
  int inv = 0;
  for (ElemSet r = t; r; r &= r - 1) {
    int b = std::countr_zero(r);
    ElemSet above = b >= 63 ? 0 : ~((ElemSet(1) << (b + 1)) - 1);
    inv += set_size(s & above);
  }
  return inv % 2 ? -1 : 1;
}

Rational normalize(const Rational& v, Ring ring) {
  if (ring.kind == RingKind::Fp) return Rational(reduce_mod(v, ring.p));
  return v;
}

namespace {

void add_term(ExteriorElement& x, ElemSet s, const Rational& c, Ring ring) {
  Rational v = normalize(x[s] + c, ring);
  if (sgn(v) == 0)
    x.erase(s);
  else
    x[s] = v;
}

}  // namespace

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b, Ring ring) {
  ExteriorElement out;
  for (auto& [s, c] : a)
    for (auto& [t, d] : b) {
      int sg = wedge_sign(s, t);
      if (sg) add_term(out, s | t, sg * c * d, ring);
    }
  return out;
}

ExteriorElement circuit_boundary(ElemSet s) {
  ExteriorElement out;
  int pos = 0;
  for (ElemSet r = s; r; r &= r - 1, ++pos) {
    ElemSet u = r & (~r + 1);
    out[s & ~u] = pos % 2 ? -1 : 1;
  }
  return out;
}

ExteriorElement boundary(const ExteriorElement& x, Ring ring) {
  ExteriorElement out;
  for (auto& [s, c] : x)
    for (auto& [t, d] : circuit_boundary(s)) add_term(out, t, c * d, ring);
  return out;
}

ExteriorElement monomial(ElemSet s) { return ExteriorElement{{s, Rational(1)}}; }

std::string format_element(const ExteriorElement& x) {
  if (x.empty()) return "0";
  std::string out;
  for (auto& [s, c] : x) {
    if (!out.empty()) out += sgn(c) < 0 ? " - " : " + ";
    else if (sgn(c) < 0) out += "-";
    Rational a = abs(c);
    std::string name = "e";
    auto el = elements_of(s);
    if (el.empty()) name = "1";
    for (size_t i = 0; i < el.size(); ++i) name += (i ? "," : "") + std::to_string(el[i] + 1);
    if (a != 1) out += a.get_str() + "*";
    out += name;
  }
  return out;
}

OSAlgebra::OSAlgebra(const Matroid& m, Ring ring, int max_degree) : m_(m), ring_(ring) {
  if (!ring.is_field()) throw InputError("the OS algebra is materialized over fields only");
  top_ = max_degree < 0 ? m.rank() : std::min(max_degree, m.rank());
  degrees_.resize(static_cast<size_t>(top_) + 1);
  for (int k = 0; k <= top_; ++k) build_degree(k);
}

const OSAlgebra::Degree& OSAlgebra::deg(int k) const {
  if (k < 0 || k > top_) throw InputError("degree " + std::to_string(k) + " not materialized");
  return degrees_[static_cast<size_t>(k)];
}

void OSAlgebra::build_degree(int k) {
  Degree& D = degrees_[static_cast<size_t>(k)];
  const size_t n = m_.size();
  std::vector<ElemSet> broken;
  for (ElemSet c : m_.circuits()) broken.push_back(c & (c - 1));
  std::vector<ElemSet> non;
  for_each_subset_of_size(n, k, [&](ElemSet s) {
    bool nbc = true;
    for (ElemSet b : broken)
      if (subset_of(b, s)) {
        nbc = false;
        break;
      }
    if (nbc) {
      D.nbc_index[s] = static_cast<uint32_t>(D.nbc.size());
      D.nbc.push_back(s);
    } else {
      non.push_back(s);
    }
  });
  D.monomials = non.size() + D.nbc.size();
  if (D.monomials > 5000) throw BudgetExceeded("E^" + std::to_string(k) + " has more than 5000 monomials");

  // columns: non-NBC monomials first, then NBC
  std::unordered_map<ElemSet, uint32_t> col;
  for (size_t i = 0; i < non.size(); ++i) col[non[i]] = static_cast<uint32_t>(i);
  for (size_t i = 0; i < D.nbc.size(); ++i) col[D.nbc[i]] = static_cast<uint32_t>(non.size() + i);
  const size_t C = D.monomials;

  // generators e_T ^ d(e_C) of I^k
  std::vector<ExteriorElement> gens_rows;
  EchelonQ eq(C);
  EchelonFp ef(ring_.p ? ring_.p : 2, C);
  const bool fp = ring_.kind == RingKind::Fp;
  for (ElemSet c : m_.circuits()) {
    int sz = set_size(c);
    if (sz > k + 1) continue;
    ExteriorElement dc = circuit_boundary(c);
    for_each_subset_of_size(n, k + 1 - sz, [&](ElemSet t) {
      ExteriorElement g = wedge(monomial(t), dc, Ring::rationals());
      if (g.empty()) return;
      if (fp) {
        SparseRowFp row;
        for (auto& [s, v] : g) {
          uint32_t r = reduce_mod(v, ring_.p);
          if (r) row.emplace_back(col.at(s), r);
        }
        std::sort(row.begin(), row.end());
        if (ef.insert(row)) gens_rows.push_back(g);
      } else {
        SparseRowZ row;
        for (auto& [s, v] : g) row.emplace_back(col.at(s), v.get_num());
        std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
        if (eq.insert(row)) gens_rows.push_back(g);
      }
    });
  }
  const size_t r = gens_rows.size();
  D.elim_dim = C - r;
  if (D.elim_dim != D.nbc.size())
    throw ConsistencyError("degree " + std::to_string(k) + ": elimination gives " + std::to_string(D.elim_dim) +
                           " but the NBC count is " + std::to_string(D.nbc.size()));
  if (r == 0) return;

  ExactMatrix M(ring_, r, C);
  for (size_t i = 0; i < r; ++i)
    for (auto& [s, v] : gens_rows[i]) M.set(i, col.at(s), normalize(v, ring_));
  std::vector<size_t> piv;
  ExactMatrix R = rref(M, &piv);
  for (size_t i = 0; i < piv.size(); ++i)
    if (piv[i] != i)
      throw ConsistencyError("degree " + std::to_string(k) + ": NBC monomials do not span a complement of I");
  const size_t a = non.size();
  for (size_t i = 0; i < a; ++i) {
    std::vector<std::pair<uint32_t, Rational>> v;
    for (size_t j = a; j < C; ++j) {
      Rational x = R.get(i, j);
      if (sgn(x) != 0) v.emplace_back(static_cast<uint32_t>(j - a), normalize(-x, ring_));
    }
    D.nf.emplace(non[i], std::move(v));
  }
}

std::optional<size_t> OSAlgebra::basis_index(ElemSet s) const {
  int k = set_size(s);
  if (k > top_) return std::nullopt;
  auto& D = deg(k);
  auto it = D.nbc_index.find(s);
  if (it == D.nbc_index.end()) return std::nullopt;
  return it->second;
}

size_t OSAlgebra::ideal_dim(int k) const {
  auto& D = deg(k);
  return D.monomials - D.elim_dim;
}

ExteriorElement OSAlgebra::normal_form(const ExteriorElement& x) const {
  ExteriorElement out;
  for (auto& [s, c] : x) {
    int k = set_size(s);
    if (k > m_.rank()) continue;  // A^k = 0 above the rank
    auto& D = deg(k);
    if (D.nbc_index.count(s)) {
      add_term(out, s, c, ring_);
      continue;
    }
    for (auto& [j, v] : D.nf.at(s)) add_term(out, D.nbc[j], c * v, ring_);
  }
  return out;
}

std::vector<Rational> OSAlgebra::coordinates(const ExteriorElement& x, int k) const {
  std::vector<Rational> out(dim(k));
  for (auto& [s, c] : normal_form(x)) {
    if (set_size(s) != k) throw InputError("element is not homogeneous of degree " + std::to_string(k));
    out[deg(k).nbc_index.at(s)] = c;
  }
  return out;
}

ExteriorElement OSAlgebra::multiply(const ExteriorElement& a, const ExteriorElement& b) const {
  return normal_form(wedge(a, b, ring_));
}

ExactMatrix OSAlgebra::left_mult(size_t i, int k) const {
  const size_t rows = k + 1 > m_.rank() ? 0 : deg(k + 1).nbc.size();
  ExactMatrix M(ring_, rows, dim(k));
  if (!rows) return M;
  auto& Dk = deg(k);
  auto& Dk1 = deg(k + 1);
  for (size_t j = 0; j < Dk.nbc.size(); ++j) {
    ElemSet s = Dk.nbc[j];
    int sg = wedge_sign(bit(i), s);
    if (!sg) continue;
    ExteriorElement x = normal_form(ExteriorElement{{s | bit(i), Rational(sg)}});
    for (auto& [t, c] : x) M.set(Dk1.nbc_index.at(t), j, c);
  }
  return M;
}

ExactMatrix OSAlgebra::boundary_matrix(int k) const {
  ExactMatrix M(ring_, k >= 1 ? dim(k - 1) : 0, dim(k));
  if (k < 1) return M;
  auto& Dk = deg(k);
  auto& Dl = deg(k - 1);
  for (size_t j = 0; j < Dk.nbc.size(); ++j)
    for (auto& [t, c] : normal_form(boundary(monomial(Dk.nbc[j]), ring_))) M.set(Dl.nbc_index.at(t), j, c);
  return M;
}

std::vector<size_t> OSAlgebra::betti() const {
  std::vector<size_t> out;
  for (int k = 0; k <= top_; ++k) out.push_back(dim(k));
  return out;
}

std::vector<Integer> betti_numbers(const FlatLattice& L) {
  std::vector<Integer> out;
  for (int k = 0; k <= L.rank(); ++k) {
    Integer s = 0;
    for (size_t i : L.level(k)) s += L.flat(i).mobius;
    out.push_back(k % 2 ? Integer(-s) : s);
  }
  return out;
}

std::vector<Integer> poincare_polynomial(const FlatLattice& L) { return betti_numbers(L); }

std::vector<size_t> projective_dims(const OSAlgebra& a) {
  std::vector<size_t> out;
  for (int k = 0; k <= a.max_degree(); ++k) out.push_back(k == 0 ? 1 : a.dim(k) - rank_of(a.boundary_matrix(k)));
  return out;
}

ExactMatrix projective_basis(const OSAlgebra& a, int k) {
  if (k == 0) return ExactMatrix::identity(a.ring(), 1);
  return kernel_basis(a.boundary_matrix(k));
}

std::pair<size_t, size_t> quadratic_probe(const OSAlgebra& a) {
  if (a.max_degree() < 3) return {0, 0};
  const Matroid& m = a.matroid();
  const size_t n = m.size();
  std::unordered_map<ElemSet, uint32_t> col;
  uint32_t next = 0;
  for_each_subset_of_size(n, 3, [&](ElemSet s) { col[s] = next++; });
  Ring ring = a.ring();
  EchelonFp ef(ring.p ? ring.p : 2, next);
  EchelonQ eq(next);
  for (ElemSet c : m.circuits()) {
    if (set_size(c) != 3) continue;
    ExteriorElement dc = circuit_boundary(c);
    for (size_t i = 0; i < n; ++i) {
      ExteriorElement g = wedge(monomial(bit(i)), dc, Ring::rationals());
      if (ring.kind == RingKind::Fp) {
        SparseRowFp row;
        for (auto& [s, v] : g)
          if (uint32_t r = reduce_mod(v, ring.p)) row.emplace_back(col.at(s), r);
        std::sort(row.begin(), row.end());
        ef.insert(row);
      } else {
        SparseRowZ row;
        for (auto& [s, v] : g) row.emplace_back(col.at(s), v.get_num());
        std::sort(row.begin(), row.end(), [](auto& x, auto& y) { return x.first < y.first; });
        eq.insert(row);
      }
    }
  }
  size_t quad = ring.kind == RingKind::Fp ? ef.rank() : eq.rank();
  return {quad, a.ideal_dim(3)};
}

}  // namespace mres

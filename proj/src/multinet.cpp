#include "mres/multinet.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <numeric>
#include <set>

#include "mres/koszul.hpp"
#include "mres/matrix.hpp"
#include "mres/os_algebra.hpp"
#include "mres/series.hpp"

namespace mres {

int Multinet::part_of(int u) const {
  for (size_t a = 0; a < parts.size(); ++a)
    if (parts[a] & bit(static_cast<size_t>(u))) return static_cast<int>(a);
  return -1;
}

namespace {

ElemSet span2(const Matroid& m, int u, int v) { return m.closure(bit(static_cast<size_t>(u)) | bit(static_cast<size_t>(v))); }

MultinetCheck fail(int condition, std::string witness) {
  MultinetCheck c;
  c.violation = Violation{condition, std::move(witness)};
  return c;
}

// components of the graph on a part whose edges avoid the locus
std::vector<ElemSet> part_components(const Matroid& m, ElemSet part, const std::set<ElemSet>& locus) {
  std::vector<ElemSet> out;
  ElemSet left = part;
  while (left) {
    ElemSet comp = left & (~left + 1), frontier = comp;
    while (frontier) {
      int u = std::countr_zero(frontier);
      frontier &= frontier - 1;
      for (int v : elements_of(left & ~comp))
        if (!locus.count(span2(m, u, v))) comp |= bit(static_cast<size_t>(v)), frontier |= bit(static_cast<size_t>(v));
    }
    out.push_back(comp);
    left &= ~comp;
  }
  return out;
}

}  // namespace

MultinetCheck verify_multinet(const Matroid& m, const std::vector<ElemSet>& parts, const std::vector<int>& mult,
                              MultinetMode mode, const std::vector<ElemSet>* declared_locus) {
  const size_t n = m.size();
  if (parts.size() < 3) return fail(0, "need at least 3 parts");
  if (mult.size() != n) return fail(0, "multiplicity vector has the wrong length");
  ElemSet seen = 0;
  for (ElemSet p : parts) {
    if (!p) return fail(0, "empty part");
    if (seen & p) return fail(0, "parts overlap at " + format_set(seen & p));
    seen |= p;
  }
  if (seen != m.ground()) return fail(0, "parts miss " + format_set(m.ground() & ~seen));
  for (size_t u = 0; u < n; ++u)
    if (mult[u] < 1) return fail(0, "multiplicity of " + std::to_string(u + 1) + " is not positive");
  Multinet N;
  N.mode = mode;
  N.parts = parts;
  N.mult = mult;
  N.k = static_cast<int>(parts.size());
  std::vector<int> sums;
  for (ElemSet p : parts) {
    int s = 0;
    for (int u : elements_of(p)) s += mult[u];
    sums.push_back(s);
  }
  for (size_t a = 1; a < sums.size(); ++a)
    if (sums[a] != sums[0])
      return fail(1, "part " + format_set(parts[a]) + " sums to " + std::to_string(sums[a]) + ", part " +
                         format_set(parts[0]) + " to " + std::to_string(sums[0]));
  N.d = sums[0];
  std::vector<int> part(n);
  for (size_t a = 0; a < parts.size(); ++a)
    for (int u : elements_of(parts[a])) part[u] = static_cast<int>(a);
  std::set<ElemSet> declared;
  if (declared_locus) declared.insert(declared_locus->begin(), declared_locus->end());
  std::unique_ptr<FlatLattice> L;
  if (mode == MultinetMode::Strict) L = std::make_unique<FlatLattice>(m);
  std::set<ElemSet> locus;
  for (size_t u = 0; u < n; ++u)
    for (size_t v = u + 1; v < n; ++v) {
      if (part[u] == part[v]) continue;
      ElemSet X = span2(m, static_cast<int>(u), static_cast<int>(v));
      if (m.rank(X) != 2) return fail(2, "span of " + format_set(bit(u) | bit(v)) + " is not a rank-2 flat");
      if (L && !L->irreducible(*L->index_of(X), IrreducibleMode::Strict))
        return fail(2, "span " + format_set(X) + " of " + format_set(bit(u) | bit(v)) + " is reducible");
      if (declared_locus && !declared.count(X))
        return fail(2, "span " + format_set(X) + " is not in the declared base locus");
      locus.insert(X);
    }
  if (declared_locus) locus = declared;
  for (ElemSet X : locus) {
    int order = -1;
    for (size_t a = 0; a < parts.size(); ++a) {
      if (!(X & parts[a])) continue;
      int s = 0;
      for (int u : elements_of(X & parts[a])) s += mult[u];
      if (order >= 0 && s != order)
        return fail(3, "flat " + format_set(X) + " has part sums " + std::to_string(order) + " and " + std::to_string(s));
      order = s;
    }
    N.base_locus.push_back(X);
    N.orders.push_back(std::max(order, 0));
  }
  N.connected = true;
  for (ElemSet p : parts)
    if (part_components(m, p, locus).size() > 1) N.connected = false;
  N.reduced = std::all_of(mult.begin(), mult.end(), [](int x) { return x == 1; });
  N.meets_all_parts = std::all_of(N.base_locus.begin(), N.base_locus.end(), [&](ElemSet X) {
    return std::all_of(parts.begin(), parts.end(), [&](ElemSet p) { return (X & p) != 0; });
  });
  N.net = N.connected && N.meets_all_parts && std::all_of(N.orders.begin(), N.orders.end(), [](int x) { return x == 1; });
  MultinetCheck c;
  c.multinet = std::move(N);
  if (!c.multinet->connected) {
    for (ElemSet p : parts) {
      auto comps = part_components(m, p, locus);
      if (comps.size() > 1) {
        c.violation = Violation{4, "part " + format_set(p) + " splits into " + format_set(comps[0]) + " and " +
                                       format_set(p & ~comps[0])};
        break;
      }
    }
  }
  return c;
}

IdentityReport multinet_identities(const Multinet& N) {
  IdentityReport r;
  long total = std::accumulate(N.mult.begin(), N.mult.end(), 0L);
  r.sum = total == static_cast<long>(N.k) * N.d;
  if (!r.sum) r.detail += "sum of multiplicities " + std::to_string(total) + " != k d; ";
  r.orders = true;
  for (size_t u = 0; u < N.mult.size(); ++u) {
    long s = 0;
    for (size_t i = 0; i < N.base_locus.size(); ++i)
      if (N.base_locus[i] & bit(u)) s += N.orders[i];
    if (s != N.d) {
      if (r.orders) r.detail += "orders through " + std::to_string(u + 1) + " sum to " + std::to_string(s) + " != d; ";
      r.orders = false;
    }
  }
  long sq = 0;
  for (int o : N.orders) sq += static_cast<long>(o) * o;
  r.squares = sq == static_cast<long>(N.d) * N.d;
  if (!r.squares) r.detail += "sum of squared orders " + std::to_string(sq) + " != d^2; ";
  return r;
}

RHReport rh_check(const Matroid& m, const Multinet& N) {
  FlatLattice L(m);
  std::set<ElemSet> locus(N.base_locus.begin(), N.base_locus.end());
  long outside = 0;
  for (size_t f : L.level(2))
    if (!locus.count(L.flat(f).elements)) outside += L.flat(f).mobius;
  long sum_orders = std::accumulate(N.orders.begin(), N.orders.end(), 0L);
  RHReport r;
  r.lhs = 3 + static_cast<long>(N.base_locus.size());
  r.rhs = 2 * static_cast<long>(m.size()) - (N.k - 2) * (3L * N.d - sum_orders) - outside;
  r.slack = r.lhs - r.rhs;
  r.holds = r.slack >= 0;
  return r;
}

MultinetCheck refine_weak(const Matroid& m, const Multinet& N) {
  std::set<ElemSet> locus(N.base_locus.begin(), N.base_locus.end());
  std::vector<ElemSet> parts;
  for (ElemSet p : N.parts)
    for (ElemSet c : part_components(m, p, locus)) parts.push_back(c);
  std::sort(parts.begin(), parts.end(), [](ElemSet a, ElemSet b) { return std::countr_zero(a) < std::countr_zero(b); });
  MultinetCheck r = verify_multinet(m, parts, N.mult, N.mode);
  if (r.multinet && r.multinet->base_locus != N.base_locus) {
    r.violation = Violation{2, "refinement changes the base locus"};
    r.multinet.reset();
  }
  return r;
}

std::vector<Multinet> search_multinets(const Matroid& m, int k, const SearchOptions& opt) {
  std::vector<Multinet> out;
  const int n = static_cast<int>(m.size());
  if (k < 3 || k > n) return out;
  if (opt.m_max == 1 && n % k) return out;
  FlatLattice L(m);
  // rank-2 flats through each pair, and the flats finishing at each element
  std::vector<std::vector<size_t>> span(n, std::vector<size_t>(n, 0));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) span[u][v] = span[v][u] = *L.index_of(span2(m, u, v));
  std::vector<std::vector<ElemSet>> closing(n);
  for (size_t f : L.level(2)) {
    ElemSet X = L.flat(f).elements;
    closing[63 - std::countl_zero(X)].push_back(X);
  }
  const int cap = opt.m_max == 1 ? n / k : INT32_MAX;
  std::vector<int> part(n, -1), mult(n, 0), psum(k, 0), psize(k, 0);
  uint64_t nodes = 0;
  auto flat_ok = [&](ElemSet X) {
    int order = -1, colors = 0;
    std::vector<int> s(k, 0);
    for (int u : elements_of(X)) s[part[u]] += mult[u];
    for (int a = 0; a < k; ++a)
      if (s[a]) ++colors;
    if (colors < 2) return true;  // not in the base locus
    if (colors < k) return false;
    for (int a = 0; a < k; ++a) {
      if (!s[a]) continue;
      if (order >= 0 && s[a] != order) return false;
      order = s[a];
    }
    return true;
  };
  auto rec = [&](auto&& self, int u, int used) -> void {
    if (++nodes > opt.node_budget) throw BudgetExceeded("multinet search exceeded its node budget");
    if (u == n) {
      if (used != k) return;
      for (int a = 1; a < k; ++a)
        if (psum[a] != psum[0]) return;
      int g = 0;
      for (int x : mult) g = std::gcd(g, x);
      if (g != 1) return;
      std::vector<ElemSet> parts(k, 0);
      for (int v = 0; v < n; ++v) parts[part[v]] |= bit(static_cast<size_t>(v));
      auto c = verify_multinet(m, parts, mult, opt.mode);
      if (c.multinet && c.multinet->meets_all_parts && (c.multinet->connected || opt.include_weak))
        out.push_back(*c.multinet);
      return;
    }
    if (k - used > n - u) return;
    for (int a = 0; a <= std::min(used, k - 1); ++a) {
      if (psize[a] + 1 > cap) continue;
      bool ok = true;
      if (opt.mode == MultinetMode::Strict)
        for (int v = 0; v < u && ok; ++v)
          if (part[v] != a && !L.irreducible(span[u][v], IrreducibleMode::Strict)) ok = false;
      if (!ok) continue;
      for (int mu = 1; mu <= opt.m_max; ++mu) {
        part[u] = a;
        mult[u] = mu;
        psum[a] += mu;
        psize[a]++;
        bool good = true;
        for (ElemSet X : closing[u])
          if (!flat_ok(X)) {
            good = false;
            break;
          }
        if (good) self(self, u + 1, std::max(used, a + 1));
        psum[a] -= mu;
        psize[a]--;
      }
      part[u] = -1;
      mult[u] = 0;
    }
  };
  rec(rec, 0, 0);
  return out;
}

bool is_latin(const LatinSquare& l) {
  const size_t d = l.size();
  for (auto& row : l)
    if (row.size() != d) return false;
  for (size_t i = 0; i < d; ++i) {
    std::vector<bool> r(d + 1), c(d + 1);
    for (size_t j = 0; j < d; ++j) {
      int a = l[i][j], b = l[j][i];
      if (a < 1 || a > static_cast<int>(d) || b < 1 || b > static_cast<int>(d) || r[a] || c[b]) return false;
      r[a] = c[b] = true;
    }
  }
  return true;
}

bool orthogonal(const LatinSquare& a, const LatinSquare& b) {
  std::set<std::pair<int, int>> seen;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      if (!seen.insert({a[i][j], b[i][j]}).second) return false;
  return true;
}

bool isotopic(const LatinSquare& a, const LatinSquare& b) {
  const size_t d = a.size();
  if (b.size() != d) return false;
  if (d > 6) throw InputError("isotopy test limited to d <= 6");
  std::vector<int> r(d), c(d);
  std::iota(r.begin(), r.end(), 0);
  do {
    std::iota(c.begin(), c.end(), 0);
    do {
      std::vector<int> sigma(d + 1, 0), used(d + 1, 0);
      bool ok = true;
      for (size_t i = 0; i < d && ok; ++i)
        for (size_t j = 0; j < d && ok; ++j) {
          int x = a[r[i]][c[j]], y = b[i][j];
          if (sigma[x] == 0 && !used[y])
            sigma[x] = y, used[y] = 1;
          else if (sigma[x] != y)
            ok = false;
        }
      if (ok) return true;
    } while (std::next_permutation(c.begin(), c.end()));
  } while (std::next_permutation(r.begin(), r.end()));
  return false;
}

std::vector<LatinSquare> net_to_latin(const Matroid& m, const Multinet& N) {
  if (!N.net) throw InputError("net_to_latin: not a net");
  auto e1 = elements_of(N.parts[0]), e2 = elements_of(N.parts[1]);
  const size_t d = e1.size();
  std::vector<LatinSquare> out;
  for (int g = 2; g < N.k; ++g) {
    auto eg = elements_of(N.parts[g]);
    LatinSquare l(d, std::vector<int>(d, 0));
    for (size_t p = 0; p < d; ++p)
      for (size_t q = 0; q < d; ++q) {
        ElemSet hit = span2(m, e1[p], e2[q]) & N.parts[g];
        if (set_size(hit) != 1) throw ConsistencyError("net_to_latin: line does not meet the part once");
        int w = std::countr_zero(hit);
        l[p][q] = static_cast<int>(std::find(eg.begin(), eg.end(), w) - eg.begin()) + 1;
      }
    if (!is_latin(l)) throw ConsistencyError("net_to_latin: extracted table is not Latin");
    out.push_back(std::move(l));
  }
  for (size_t i = 0; i < out.size(); ++i)
    for (size_t j = i + 1; j < out.size(); ++j)
      if (!orthogonal(out[i], out[j])) throw ConsistencyError("net_to_latin: squares are not orthogonal");
  return out;
}

KawaharaResult latin_to_matroid(const LatinSquare& l) {
  if (l.empty() || !is_latin(l)) throw InputError("latin_to_matroid: not a Latin square");
  const size_t d = l.size();
  std::vector<ElemSet> lines;
  for (size_t p = 0; p < d; ++p)
    for (size_t q = 0; q < d; ++q) lines.push_back(bit(p) | bit(d + q) | bit(2 * d + l[p][q] - 1));
  KawaharaResult r{lines_matroid(3 * d, lines), {}};
  std::vector<ElemSet> parts{full_set(d), full_set(d) << d, full_set(d) << (2 * d)};
  auto c = verify_multinet(r.matroid, parts, std::vector<int>(3 * d, 1));
  if (!c.multinet || !c.multinet->net) throw ConsistencyError("latin_to_matroid: the construction is not a net");
  r.net = *c.multinet;
  return r;
}

std::vector<std::vector<Rational>> subspace_of_multinet(const Multinet& N, size_t ground) {
  auto w = [&](int a) {
    std::vector<Rational> v(ground);
    for (int u : elements_of(N.parts[a])) v[u] = N.mult[u];
    return v;
  };
  std::vector<std::vector<Rational>> out;
  auto w1 = w(0);
  for (int a = 1; a < N.k; ++a) {
    auto v = w(a);
    for (size_t i = 0; i < ground; ++i) v[i] -= w1[i];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<const R1Component*> R1Components::at_depth(int s) const {
  std::vector<const R1Component*> out;
  for (auto& c : components)
    if (c.k >= s + 2) out.push_back(&c);
  return out;
}

namespace {

size_t span_rank(const std::vector<std::vector<Rational>>& vs, size_t n) {
  if (vs.empty()) return 0;
  ExactMatrix M(Ring::rationals(), vs.size(), n);
  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = 0; j < n; ++j)
      if (sgn(vs[i][j])) M.set(i, j, vs[i][j]);
  return rank_of(M);
}

std::vector<std::vector<Rational>> lift(const std::vector<std::vector<Rational>>& vs, ElemSet support, size_t n) {
  auto idx = elements_of(support);
  std::vector<std::vector<Rational>> out;
  for (auto& v : vs) {
    std::vector<Rational> w(n);
    for (size_t i = 0; i < idx.size(); ++i) w[idx[i]] = v[i];
    out.push_back(std::move(w));
  }
  return out;
}

}  // namespace

R1Components r1_components(const Matroid& m, int m_max) {
  R1Components out;
  const size_t n = m.size();
  FlatLattice L(m);
  for (size_t f : L.level(2)) {
    ElemSet X = L.flat(f).elements;
    if (set_size(X) < 3) continue;
    Matroid sub = restriction(m, X);
    std::vector<ElemSet> parts;
    for (int i = 0; i < set_size(X); ++i) parts.push_back(bit(static_cast<size_t>(i)));
    auto c = verify_multinet(sub, parts, std::vector<int>(set_size(X), 1));
    R1Component comp;
    comp.support = X;
    comp.k = set_size(X);
    comp.local = true;
    comp.multinet = *c.multinet;
    comp.basis = lift(subspace_of_multinet(comp.multinet, sub.size()), X, n);
    out.components.push_back(std::move(comp));
  }
  // resonance in degree 1 only grows under adding elements, so every restriction
  // counts; an essential multinet needs d >= 2, hence at least 6 elements
  std::vector<ElemSet> supports;
  if (n <= 12) {
    for (ElemSet S = 1; S < (ElemSet(1) << n); ++S)
      if (set_size(S) >= 6 && m.rank(S) >= 3) supports.push_back(S);
  } else {
    out.complete = false;
    out.note = "ground set larger than 12: only flats of rank >= 3 searched";
    for (auto& fl : L.flats())
      if (fl.rank >= 3 && set_size(fl.elements) >= 6) supports.push_back(fl.elements);
  }
  SearchOptions opt;
  opt.m_max = m_max;
  for (ElemSet S : supports) {
    Matroid sub = restriction(m, S);
    for (int k = 3; k <= std::min(5, set_size(S)); ++k) {
      std::vector<Multinet> found;
      try {
        found = search_multinets(sub, k, opt);
      } catch (const BudgetExceeded&) {
        out.complete = false;
        out.note = "search budget exceeded on " + format_set(S);
        continue;
      }
      for (auto& N : found) {
        R1Component comp;
        comp.support = S;
        comp.k = k;
        comp.multinet = N;
        comp.basis = lift(subspace_of_multinet(N, sub.size()), S, n);
        out.components.push_back(std::move(comp));
      }
    }
  }
  // drop subspaces inside a larger one (sub-nets of a net with more parts)
  std::vector<R1Component> kept;
  for (size_t i = 0; i < out.components.size(); ++i) {
    bool inside = false;
    for (size_t j = 0; j < out.components.size() && !inside; ++j) {
      if (i == j || out.components[j].basis.size() <= out.components[i].basis.size()) continue;
      auto both = out.components[j].basis;
      both.insert(both.end(), out.components[i].basis.begin(), out.components[i].basis.end());
      inside = span_rank(both, n) == out.components[j].basis.size();
    }
    if (!inside) kept.push_back(std::move(out.components[i]));
  }
  out.components = std::move(kept);
  // pairwise intersections
  for (size_t i = 0; i < out.components.size(); ++i)
    for (size_t j = i + 1; j < out.components.size(); ++j) {
      auto both = out.components[i].basis;
      both.insert(both.end(), out.components[j].basis.begin(), out.components[j].basis.end());
      if (span_rank(both, n) != out.components[i].basis.size() + out.components[j].basis.size()) {
        out.disjoint = false;
        out.note += (out.note.empty() ? "" : "; ") + std::string("components over ") +
                    format_set(out.components[i].support) + " and " + format_set(out.components[j].support) + " meet";
      }
    }
  return out;
}

uint64_t component_point_count(const R1Components& c, size_t ground, uint32_t p) {
  std::set<std::vector<uint32_t>> pts;
  pts.insert(std::vector<uint32_t>(ground, 0));
  for (auto& comp : c.components) {
    std::vector<std::vector<uint32_t>> b;
    for (auto& v : comp.basis) {
      std::vector<uint32_t> w(ground);
      for (size_t i = 0; i < ground; ++i) w[i] = reduce_mod(v[i], p);
      b.push_back(std::move(w));
    }
    std::vector<uint32_t> coef(b.size(), 0);
    for (;;) {
      std::vector<uint32_t> x(ground, 0);
      for (size_t t = 0; t < b.size(); ++t)
        for (size_t i = 0; i < ground; ++i) x[i] = add_mod(x[i], mul_mod(coef[t], b[t][i], p), p);
      pts.insert(std::move(x));
      size_t t = 0;
      while (t < coef.size() && ++coef[t] == p) coef[t++] = 0;
      if (t == coef.size()) break;
    }
  }
  return pts.size();
}

ChenConjectureReport chen_conjecture_report(const Matroid& m, int R) {
  ChenConjectureReport rep;
  auto c = r1_components(m);
  rep.partial = !c.complete;
  rep.note = c.note;
  for (auto& comp : c.components) rep.census[comp.k]++;
  auto theta = chen_ranks_inverse(OSAlgebra(m, Ring::rationals()), R);
  for (int r = 4; r <= R; ++r) {
    ChenConjectureRow row;
    row.r = r;
    row.lhs = static_cast<unsigned long>(theta[r - 2]);
    for (auto [k, cnt] : rep.census) row.rhs += cnt * binomial(k + r - 3, r);
    row.rhs *= r - 1;
    if (row.lhs != row.rhs && !rep.first_disagreement) rep.first_disagreement = r;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace mres

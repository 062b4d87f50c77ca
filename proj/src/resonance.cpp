#include "mres/resonance.hpp"

#include <algorithm>
#include <cstdlib>
#include <bit>
#include <map>
#include <memory>
#include <tuple>
#include <set>
#include <thread>

namespace mres {

// ---- LinearMatrix ----------------------------------------------------------

LinearMatrix::LinearMatrix(Ring ring, size_t rows, size_t cols, size_t nvars)
    : ring_(ring), rows_(rows), cols_(cols), nvars_(nvars) {}

void LinearMatrix::add(size_t i, size_t j, uint32_t var, const Rational& c) {
  Rational v = normalize(c, ring_);
  if (sgn(v) == 0) return;
  uint32_t cp = ring_.kind == RingKind::Fp ? static_cast<uint32_t>(v.get_num().get_ui()) : 0;
  entries_.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(j), var, v, cp});
}

ExactMatrix LinearMatrix::evaluate(const std::vector<Rational>& a) const {
  std::vector<Rational> acc(rows_ * cols_);
  for (auto& e : entries_) acc[e.i * cols_ + e.j] += e.var == kConstant ? e.c : e.c * a.at(e.var);
  ExactMatrix m(ring_, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j)
      if (sgn(acc[i * cols_ + j]) != 0) m.set(i, j, normalize(acc[i * cols_ + j], ring_));
  return m;
}

ExactMatrix LinearMatrix::coefficient(uint32_t var) const {
  std::vector<Rational> acc(rows_ * cols_);
  for (auto& e : entries_)
    if (e.var == var) acc[e.i * cols_ + e.j] += e.c;
  ExactMatrix m(ring_, rows_, cols_);
  for (size_t k = 0; k < acc.size(); ++k)
    if (sgn(acc[k]) != 0) m.set(k / cols_, k % cols_, normalize(acc[k], ring_));
  return m;
}

LinearMatrix LinearMatrix::compose_right(const ExactMatrix& b) const {
  if (b.rows() != cols_) throw InputError("compose_right: dimension mismatch");
  LinearMatrix out(ring_, rows_, b.cols(), nvars_);
  std::map<std::tuple<uint32_t, uint32_t, uint32_t>, Rational> acc;
  for (auto& e : entries_)
    for (size_t k = 0; k < b.cols(); ++k) {
      Rational v = b.get(e.j, k);
      if (sgn(v) != 0) acc[{e.i, static_cast<uint32_t>(k), e.var}] += e.c * v;
    }
  for (auto& [key, v] : acc) out.add(std::get<0>(key), std::get<1>(key), std::get<2>(key), v);
  return out;
}

LinearMatrix LinearMatrix::concat(const LinearMatrix& o) const {
  if (o.rows_ != rows_) throw InputError("concat: row mismatch");
  LinearMatrix out(ring_, rows_, cols_ + o.cols_, std::max(nvars_, o.nvars_));
  out.entries_ = entries_;
  for (auto e : o.entries_) {
    e.j += static_cast<uint32_t>(cols_);
    out.entries_.push_back(e);
  }
  return out;
}

void LinearMatrix::evaluate_transposed_fp(const uint32_t* a, uint32_t* out) const {
  const uint32_t p = ring_.p;
  std::fill(out, out + rows_ * cols_, 0u);
  for (auto& e : entries_) {
    uint32_t v = e.var == kConstant ? e.cp : mul_mod(e.cp, a[e.var], p);
    uint32_t& slot = out[size_t(e.j) * rows_ + e.i];
    slot = add_mod(slot, v, p);
  }
}

// ---- Aomoto complexes ------------------------------------------------------

LinearMatrix universal_aomoto(const OSAlgebra& a, int q) {
  const size_t n = a.n();
  if (q < 0) return LinearMatrix(a.ring(), a.dim(0), 0, n);
  LinearMatrix out(a.ring(), q + 1 > a.matroid().rank() ? 0 : a.dim(q + 1), a.dim(q), n);
  if (out.rows() == 0) return out;
  for (size_t i = 0; i < n; ++i) {
    ExactMatrix m = a.left_mult(i, q);
    for (size_t r = 0; r < m.rows(); ++r)
      for (size_t c = 0; c < m.cols(); ++c)
        if (!m.is_zero(r, c)) out.add(r, c, static_cast<uint32_t>(i), m.get(r, c));
  }
  return out;
}

size_t aomoto_cohomology_dim(const OSAlgebra& a, const std::vector<Rational>& point, int q) {
  if (point.size() != a.n()) throw InputError("point has the wrong length");
  size_t b = a.dim(q);
  size_t r1 = q >= 1 ? rank_of(universal_aomoto(a, q - 1).evaluate(point)) : 0;
  size_t r2 = rank_of(universal_aomoto(a, q).evaluate(point));
  return b - r1 - r2;
}

bool resonance_membership(const OSAlgebra& a, const std::vector<Rational>& point, int q, int s) {
  return static_cast<int>(aomoto_cohomology_dim(a, point, q)) >= s;
}

CohomologyProbe::CohomologyProbe(LinearMatrix before, LinearMatrix after, size_t dim)
    : before_(std::move(before)),
      after_(std::move(after)),
      dim_(dim),
      p_(before_.ring().p),
      buf_b_(before_.rows() * before_.cols()),
      buf_a_(after_.rows() * after_.cols()),
      ech_b_(before_.ring().p ? before_.ring().p : 2, before_.rows()),
      ech_a_(after_.ring().p ? after_.ring().p : 2, after_.rows()) {
  if (before_.ring().kind != RingKind::Fp) throw InputError("CohomologyProbe works over F_p");
}

size_t CohomologyProbe::rank_capped(const LinearMatrix& m, const uint32_t* a, size_t cap,
                                    std::vector<uint32_t>& buf, DenseEchelonFp& ech) {
  if (m.rows() == 0 || m.cols() == 0 || cap == 0) return 0;
  m.evaluate_transposed_fp(a, buf.data());
  ech.reset();
  for (size_t r = 0; r < m.cols(); ++r) {
    ech.insert(buf.data() + r * m.rows());
    if (ech.rank() >= cap) break;
  }
  return ech.rank();
}

size_t CohomologyProbe::cohomology(const uint32_t* a) {
  size_t rb = rank_capped(before_, a, SIZE_MAX, buf_b_, ech_b_);
  size_t ra = rank_capped(after_, a, SIZE_MAX, buf_a_, ech_a_);
  return dim_ - rb - ra;
}

bool CohomologyProbe::at_least(const uint32_t* a, size_t s) {
  if (s > dim_) return false;
  size_t rb = rank_capped(before_, a, SIZE_MAX, buf_b_, ech_b_);
  size_t rest = dim_ - rb;
  if (rest < s) return false;
  size_t cap = rest - s + 1;
  return rank_capped(after_, a, cap, buf_a_, ech_a_) < cap;
}

// ---- enumeration -----------------------------------------------------------

uint64_t enumeration_budget(const EnumerationOptions& opt) {
  if (opt.budget) return opt.budget;
  if (const char* env = std::getenv("MRES_BUDGET")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && v >= 1) return static_cast<uint64_t>(v);
  }
  return 100000000ULL;
}

namespace {

// p^m, or UINT64_MAX on overflow
uint64_t power(uint64_t p, size_t m) {
  uint64_t r = 1;
  for (size_t i = 0; i < m; ++i) {
    if (r > UINT64_MAX / p) return UINT64_MAX;
    r *= p;
  }
  return r;
}

// Projective representatives of F_p^m (first nonzero coordinate 1), indexed
// 0..(p^m-1)/(p-1)-1.  Writes representative number idx into a[0..m).
void decode_rep(uint64_t idx, size_t m, uint32_t p, uint32_t* a) {
  for (size_t f = 0; f < m; ++f) {
    uint64_t block = power(p, m - 1 - f);
    if (idx < block) {
      for (size_t i = 0; i < f; ++i) a[i] = 0;
      a[f] = 1;
      for (size_t i = m; i-- > f + 1;) {
        a[i] = static_cast<uint32_t>(idx % p);
        idx /= p;
      }
      return;
    }
    idx -= block;
  }
}

// lift m free coordinates to a point of F_p^n
void lift(const uint32_t* free, size_t n, uint32_t p, Ambient ambient, uint32_t* a) {
  if (ambient == Ambient::Full) {
    std::copy(free, free + n, a);
    return;
  }
  uint32_t s = 0;
  for (size_t i = 0; i + 1 < n; ++i) {
    a[i] = free[i];
    s = add_mod(s, free[i], p);
  }
  a[n - 1] = s ? p - s : 0;
}

size_t free_dim(size_t n, Ambient ambient) { return ambient == Ambient::Full ? n : (n ? n - 1 : 0); }

uint64_t rep_count(size_t n, uint32_t p, Ambient ambient, const EnumerationOptions& opt) {
  size_t m = free_dim(n, ambient);
  uint64_t total = power(p, m);
  uint64_t budget = enumeration_budget(opt);
  if (total == UINT64_MAX || total > budget)
    throw BudgetExceeded("enumeration of " + std::to_string(p) + "^" + std::to_string(m) +
                         " points exceeds the budget of " + std::to_string(budget));
  return (total - 1) / (p - 1);
}

// calls f(point) for every projective representative, in index order
template <class F>
void for_each_rep(size_t n, uint32_t p, Ambient ambient, uint64_t begin, uint64_t end, F&& f) {
  size_t m = free_dim(n, ambient);
  std::vector<uint32_t> free(m), a(n);
  for (uint64_t idx = begin; idx < end; ++idx) {
    decode_rep(idx, m, p, free.data());
    lift(free.data(), n, p, ambient, a.data());
    f(a);
  }
}

}  // namespace

ResonancePointSet enumerate_points(size_t n, uint32_t p, Ambient ambient,
                                   const std::function<PointPredicate()>& factory, const EnumerationOptions& opt) {
  ResonancePointSet out;
  out.p = p;
  out.ambient = ambient;
  const uint64_t reps = rep_count(n, p, ambient, opt);
  unsigned T = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  T = static_cast<unsigned>(std::min<uint64_t>(T, std::max<uint64_t>(reps, 1)));
  std::vector<uint64_t> counts(T, 0);
  std::vector<std::vector<std::vector<uint32_t>>> found(T);
  auto work = [&](unsigned t) {
    PointPredicate pred = factory();
    uint64_t b = reps * t / T, e = reps * (t + 1) / T;
    for_each_rep(n, p, ambient, b, e, [&](const std::vector<uint32_t>& a) {
      if (!pred(a.data())) return;
      ++counts[t];
      if (opt.store_points) found[t].push_back(a);
    });
  };
  if (T == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < T; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  std::vector<uint32_t> zero(n, 0);
  out.contains_zero = factory()(zero.data());
  uint64_t c = 0;
  for (uint64_t x : counts) c += x;
  out.count = c * (p - 1) + (out.contains_zero ? 1 : 0);
  if (opt.store_points) {
    out.stored = true;
    if (out.contains_zero) out.points.push_back(zero);
    for (auto& part : found)
      for (auto& a : part)
        for (uint32_t l = 1; l < p; ++l) {
          std::vector<uint32_t> b(n);
          for (size_t i = 0; i < n; ++i) b[i] = mul_mod(a[i], l, p);
          out.points.push_back(std::move(b));
        }
    std::sort(out.points.begin(), out.points.end());
  }
  return out;
}

namespace {

CohomologyProbe make_probe(const OSAlgebra& a, int q) {
  return CohomologyProbe(universal_aomoto(a, q - 1), universal_aomoto(a, q), a.dim(q));
}

CohomologyProbe make_projective_probe(const OSAlgebra& a, int q) {
  ExactMatrix bq = projective_basis(a, q);
  LinearMatrix after = universal_aomoto(a, q).compose_right(bq);
  LinearMatrix before = q >= 1 ? universal_aomoto(a, q - 1).compose_right(projective_basis(a, q - 1))
                               : LinearMatrix(a.ring(), a.dim(0), 0, a.n());
  return CohomologyProbe(std::move(before), std::move(after), bq.cols());
}

}  // namespace

ResonancePointSet resonance_point_set(const OSAlgebra& a, int q, int s, Ambient ambient,
                                      const EnumerationOptions& opt) {
  if (a.ring().kind != RingKind::Fp) throw InputError("resonance_point_set enumerates over F_p");
  const uint32_t p = a.ring().p;
  EnumerationOptions o = opt;
  if (ambient == Ambient::Full) o.store_points = true;
  auto factory = [&]() -> PointPredicate {
    auto probe = std::make_shared<CohomologyProbe>(make_probe(a, q));
    return [probe, s](const uint32_t* x) { return probe->at_least(x, static_cast<size_t>(s)); };
  };
  ResonancePointSet out = enumerate_points(a.n(), p, ambient, factory, o);
  out.q = q;
  out.s = s;
  if (ambient == Ambient::Full) {
    for (auto& x : out.points) {
      uint32_t sum = 0;
      for (uint32_t v : x) sum = add_mod(sum, v, p);
      if (sum) out.violations.push_back(format_point(x));
    }
    if (!opt.store_points) {
      out.points.clear();
      out.stored = false;
    }
  }
  return out;
}

ResonancePointSet projective_resonance_point_set(const OSAlgebra& a, int q, int s, const EnumerationOptions& opt) {
  if (a.ring().kind != RingKind::Fp) throw InputError("projective_resonance_point_set enumerates over F_p");
  auto factory = [&]() -> PointPredicate {
    auto probe = std::make_shared<CohomologyProbe>(make_projective_probe(a, q));
    return [probe, s](const uint32_t* x) { return probe->at_least(x, static_cast<size_t>(s)); };
  };
  ResonancePointSet out = enumerate_points(a.n(), a.ring().p, Ambient::Projective, factory, opt);
  out.q = q;
  out.s = s;
  return out;
}

std::string format_point(const std::vector<uint32_t>& a) {
  std::string s = "(";
  for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

// ---- structure theorem checks ---------------------------------------------

bool StructureReport::all_pass() const {
  for (auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

// cohomology profile h^0..h^l at every projective representative of F_p^n
struct Profile {
  std::vector<std::vector<uint32_t>> reps;
  std::vector<std::vector<size_t>> h;  // h[idx][q]
  std::vector<size_t> h_zero;
};

Profile profile(const OSAlgebra& a, int qmax, Ambient ambient, const EnumerationOptions& opt, bool projective_algebra) {
  const uint32_t p = a.ring().p;
  std::vector<CohomologyProbe> probes;
  for (int q = 0; q <= qmax; ++q) probes.push_back(projective_algebra ? make_projective_probe(a, q) : make_probe(a, q));
  Profile pr;
  uint64_t reps = rep_count(a.n(), p, ambient, opt);
  for_each_rep(a.n(), p, ambient, 0, reps, [&](const std::vector<uint32_t>& x) {
    pr.reps.push_back(x);
    std::vector<size_t> h;
    for (auto& pb : probes) h.push_back(pb.cohomology(x.data()));
    pr.h.push_back(std::move(h));
  });
  std::vector<uint32_t> zero(a.n(), 0);
  for (auto& pb : probes) pr.h_zero.push_back(pb.cohomology(zero.data()));
  return pr;
}

bool in_hyperplane(const std::vector<uint32_t>& x, uint32_t p) {
  uint32_t s = 0;
  for (uint32_t v : x) s = add_mod(s, v, p);
  return s == 0;
}

}  // namespace

StructureReport verify_structure(const Matroid& m, uint32_t p, int qmax, const EnumerationOptions& opt) {
  StructureReport rep;
  OSAlgebra A(m, Ring::prime(p));
  const int l = m.rank();
  const int top = std::min(qmax, l);
  Profile pr = profile(A, top, Ambient::Full, opt, false);
  const size_t N = pr.reps.size();
  auto R = [&](size_t idx, int q, size_t s) { return q >= 0 && q <= top && pr.h[idx][q] >= s; };
  auto Rzero = [&](int q, size_t s) { return q >= 0 && q <= top && pr.h_zero[q] >= s; };
  const std::string where = " over F" + std::to_string(p);

  {
    CheckResult c{"resonance lies in the hyperplane sum x_i = 0" + where};
    for (size_t i = 0; i < N && c.pass; ++i)
      for (int q = 0; q <= top; ++q)
        if (pr.h[i][q] >= 1 && !in_hyperplane(pr.reps[i], p)) {
          c.pass = false;
          c.detail = "q=" + std::to_string(q) + " point " + format_point(pr.reps[i]);
          break;
        }
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"depth-1 propagation R^q_1 in R^{q+1}_1" + where};
    for (int q = 0; q + 1 <= top && q <= l - 1; ++q) {
      if (Rzero(q, 1) && !Rzero(q + 1, 1)) c.pass = false, c.detail = "q=" + std::to_string(q) + " at 0";
      for (size_t i = 0; i < N && c.pass; ++i)
        if (R(i, q, 1) && !R(i, q + 1, 1))
          c.pass = false, c.detail = "q=" + std::to_string(q) + " point " + format_point(pr.reps[i]);
    }
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"R^q_1 in R^{q+1}_s for the admissible depths" + where};
    for (int q = 0; q + 1 <= top && q <= l - 2; ++q) {
      size_t smax = 2;
      if (q < l - 2) smax = std::max<size_t>(2, 1 + static_cast<size_t>((l - 3) / (q + 1)));
      for (size_t s = 2; s <= smax; ++s) {
        if (Rzero(q, 1) && !Rzero(q + 1, s)) c.pass = false, c.detail = "q=" + std::to_string(q) + " at 0";
        for (size_t i = 0; i < N && c.pass; ++i)
          if (R(i, q, 1) && !R(i, q + 1, s))
            c.pass = false, c.detail = "q=" + std::to_string(q) + " s=" + std::to_string(s) + " point " +
                                       format_point(pr.reps[i]);
      }
    }
    rep.checks.push_back(c);
  }
  if (is_connected(m) && top >= l - 1 && l >= 1) {
    CheckResult c{"connected: R^{l-1}_1 = R^l_1 = hyperplane" + where};
    for (int q : {l - 1, l}) {
      if (q > top) continue;
      if (!Rzero(q, 1)) c.pass = false, c.detail = "0 missing in degree " + std::to_string(q);
      for (size_t i = 0; i < N && c.pass; ++i)
        if (R(i, q, 1) != in_hyperplane(pr.reps[i], p))
          c.pass = false, c.detail = "q=" + std::to_string(q) + " point " + format_point(pr.reps[i]);
    }
    rep.checks.push_back(c);
  }
  if (m.size() % p != 0) {
    CheckResult c{"projective subalgebra has the same depth-1 resonance" + where};
    const int ptop = std::min(top, l - 1);
    Profile pp = profile(A, ptop, Ambient::Projective, opt, true);
    std::map<std::vector<uint32_t>, size_t> index;
    for (size_t i = 0; i < N; ++i) index[pr.reps[i]] = i;
    for (int q = 0; q <= ptop && c.pass; ++q) {
      if ((pp.h_zero[q] >= 1) != Rzero(q, 1)) c.pass = false, c.detail = "q=" + std::to_string(q) + " at 0";
      for (size_t i = 0; i < pp.reps.size() && c.pass; ++i) {
        size_t j = index.at(pp.reps[i]);
        if ((pp.h[i][q] >= 1) != R(j, q, 1))
          c.pass = false, c.detail = "q=" + std::to_string(q) + " point " + format_point(pp.reps[i]);
      }
    }
    rep.checks.push_back(c);
  }
  {
    CheckResult c{"depth filtration and Euler characteristic" + where};
    long chi = 0;
    for (int q = 0; q <= l; ++q) chi += (q % 2 ? -1 : 1) * static_cast<long>(A.dim(q));
    for (size_t i = 0; i <= N && c.pass; ++i) {
      const auto& h = i < N ? pr.h[i] : pr.h_zero;
      for (int q = 0; q <= top; ++q)
        if (h[q] > A.dim(q)) c.pass = false, c.detail = "h exceeds b_q";
      if (i == N)
        for (int q = 0; q <= top; ++q)
          if (h[q] != A.dim(q)) c.pass = false, c.detail = "zero differential must give b_q";
      if (top == l) {
        long e = 0;
        for (int q = 0; q <= l; ++q) e += (q % 2 ? -1 : 1) * static_cast<long>(h[q]);
        if (e != chi) c.pass = false, c.detail = "Euler characteristic changed";
      }
    }
    rep.checks.push_back(c);
  }
  auto comps = components(m);
  if (comps.size() >= 2) {
    ElemSet first = comps[0];
    Matroid m1 = restriction(m, first), m2 = restriction(m, m.ground() & ~first);
    for (int q = 1; q <= top; ++q) rep.checks.push_back(check_product_formula(m1, m2, p, q, opt));
  }
  return rep;
}

CheckResult check_product_formula(const Matroid& m1, const Matroid& m2, uint32_t p, int q,
                                  const EnumerationOptions& opt) {
  CheckResult c{"product formula for R^" + std::to_string(q) + "_1 of a direct sum over F" + std::to_string(p)};
  Matroid m = direct_sum(m1, m2);
  Ring F = Ring::prime(p);
  OSAlgebra A(m, F), A1(m1, F), A2(m2, F);
  CohomologyProbe whole = make_probe(A, q);
  std::vector<CohomologyProbe> p1, p2;
  for (int i = 0; i <= q; ++i) {
    p1.push_back(make_probe(A1, std::min(i, m1.rank() + 1)));
    p2.push_back(make_probe(A2, std::min(i, m2.rank() + 1)));
  }
  const size_t n1 = m1.size();
  auto check_point = [&](const std::vector<uint32_t>& x) {
    bool lhs = whole.at_least(x.data(), 1);
    bool rhs = false;
    for (int i = 0; i <= q && !rhs; ++i) {
      int j = q - i;
      if (i > m1.rank() || j > m2.rank()) continue;
      rhs = p1[i].at_least(x.data(), 1) && p2[j].at_least(x.data() + n1, 1);
    }
    if (lhs != rhs && c.pass) {
      c.pass = false;
      c.detail = "point " + format_point(x) + (lhs ? " resonant but not in the product" : " missing");
    }
  };
  uint64_t reps = rep_count(m.size(), p, Ambient::Full, opt);
  for_each_rep(m.size(), p, Ambient::Full, 0, reps, check_point);
  check_point(std::vector<uint32_t>(m.size(), 0));
  return c;
}

// ---- envelopes -------------------------------------------------------------

EnvelopeReport envelope_check(const Matroid& m, uint32_t p, int q, EnvelopeMode mode, IrreducibleMode irr,
                              const EnumerationOptions& opt) {
  EnvelopeReport out;
  FlatLattice L(m);
  for (size_t i = 0; i < L.flats().size(); ++i) {
    const Flat& f = L.flat(i);
    if (f.rank >= 1 && f.rank <= q + 1 && L.irreducible(i, irr)) out.irreducible.push_back(f.elements);
  }
  OSAlgebra A(m, Ring::prime(p), std::min(q + 1, m.rank()));
  CohomologyProbe probe = make_probe(A, q);
  const ElemSet E = m.ground();
  auto in_env = [&](const std::vector<uint32_t>& x) {
    ElemSet covered = 0;
    for (ElemSet X : out.irreducible) {
      uint32_t s = 0;
      for (ElemSet r = X; r; r &= r - 1) s = add_mod(s, x[std::countr_zero(r)], p);
      if (s) continue;  // the complement sum vanishes too, since x lies in the hyperplane
      if (mode == EnvelopeMode::Denham) return true;
      covered |= X;
    }
    return mode == EnvelopeMode::Covers && covered == E;
  };
  uint64_t reps = rep_count(m.size(), p, Ambient::Projective, opt);
  for_each_rep(m.size(), p, Ambient::Projective, 0, reps, [&](const std::vector<uint32_t>& x) {
    bool r = probe.at_least(x.data(), 1), e = in_env(x);
    out.resonant += r;
    out.envelope += e;
    if (e && !r) ++out.slack;
    if (r && !e) {
      out.contained = false;
      if (out.witnesses.size() < 10) out.witnesses.push_back(format_point(x));
    }
  });
  out.resonant *= p - 1;
  out.envelope *= p - 1;
  out.slack *= p - 1;
  std::vector<uint32_t> zero(m.size(), 0);
  if (probe.at_least(zero.data(), 1)) ++out.resonant;
  ++out.envelope;  // 0 lies in every P_X
  return out;
}

}  // namespace mres

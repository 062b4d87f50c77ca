#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "mres/catalog.hpp"
#include "mres/koszul.hpp"
#include "mres/lie.hpp"
#include "mres/multinet.hpp"
#include "mres/os_algebra.hpp"
#include "mres/resonance.hpp"
#include "mres/series.hpp"

using namespace mres;

namespace {

struct Input {
  std::string name;
  MatroidDocument doc;
};

Input load_input(const std::string& arg) {
  if (is_catalog_name(arg)) return {arg, load_catalog(arg)};
  std::ifstream f(arg);
  if (!f) throw InputError("cannot open " + arg + " (not a file or catalog name)");
  std::stringstream ss;
  ss << f.rdbuf();
  return {arg, parse_document_text(ss.str())};
}

std::string digest(const Matroid& m) {
  uint64_t h = 1469598103934665603ull;
  for (char c : to_document(m).dump()) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json ints(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(x.fits_slong_p() ? Json(x.get_si()) : Json(x.get_str()));
  return a;
}
template <class T>
Json ints(const std::vector<T>& v) {
  Json a = Json::array();
  for (auto& x : v) a.push_back(x);
  return a;
}
Json one_based(ElemSet s) { return ints(std::vector<int>([&] {
    auto e = elements_of(s);
    for (int& x : e) ++x;
    return e;
  }())); }

// one report per run; checks decide the exit code
class Report {
 public:
  Report(std::string cmd, const Input& in) {
    j_["command"] = std::move(cmd);
    j_["input"] = in.name;
    j_["digest"] = digest(in.doc.matroid);
    j_["results"] = Json::object();
    j_["checks"] = Json::array();
  }
  Json& results() { return j_["results"]; }
  void check(const std::string& name, bool pass, const std::string& detail = {}) {
    j_["checks"].push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
    ok_ = ok_ && pass;
  }
  void check(const CheckResult& c) { check(c.name, c.pass, c.detail); }
  bool ok() const { return ok_; }
  void emit(bool json, double seconds) {
    j_["wall_seconds"] = seconds;
    if (json) {
      std::cout << j_.dump(1) << "\n";
      return;
    }
    std::cout << j_["command"].get<std::string>() << " " << j_["input"].get<std::string>() << "  ["
              << j_["digest"].get<std::string>() << "]\n";
    for (auto& [k, v] : j_["results"].items()) std::cout << "  " << k << ": " << v.dump() << "\n";
    for (auto& c : j_["checks"])
      std::cout << (c["pass"].get<bool>() ? "  PASS " : "  FAIL ") << c["name"].get<std::string>()
                << (c["detail"].get<std::string>().empty() ? "" : "  (" + c["detail"].get<std::string>() + ")") << "\n";
    std::cout << "  time: " << seconds << " s\n";
  }

 private:
  Json j_;
  bool ok_ = true;
};

void cmd_info(const Input& in, Report& rep) {
  const Matroid& m = in.doc.matroid;
  FlatLattice L(m);
  auto& r = rep.results();
  r["n"] = m.size();
  r["rank"] = m.rank();
  r["kind"] = kind_name(m.kind());
  r["connected"] = is_connected(m);
  r["supersolvable"] = L.is_supersolvable();
  Json census = Json::array(), mu = Json::array();
  for (int k = 0; k <= L.rank(); ++k) {
    census.push_back(L.level(k).size());
    for (size_t f : L.level(k))
      if (k == 2) mu.push_back({{"flat", one_based(L.flat(f).elements)}, {"mobius", L.flat(f).mobius}});
  }
  r["flats_by_rank"] = census;
  r["rank2_mobius"] = mu;
}

void cmd_betti(const Input& in, Report& rep, const std::string& field) {
  const Matroid& m = in.doc.matroid;
  Ring ring = Ring::parse(field);
  if (!ring.is_field()) throw InputError("--field: betti needs a field");
  FlatLattice L(m);
  auto lattice = betti_numbers(L);
  OSAlgebra a(m, ring);
  auto nbc = a.betti();
  std::vector<size_t> elim;
  for (int k = 0; k <= a.max_degree(); ++k) elim.push_back(a.elimination_dim(k));
  auto& r = rep.results();
  r["field"] = ring.name();
  r["betti_lattice"] = ints(lattice);
  r["betti_nbc"] = ints(nbc);
  r["betti_elimination"] = ints(elim);
  r["poincare"] = ints(poincare_polynomial(L));
  r["projective_dims"] = ints(projective_dims(a));
  bool same = nbc.size() == lattice.size() && elim == nbc;
  for (size_t k = 0; same && k < nbc.size(); ++k) same = Integer(static_cast<unsigned long>(nbc[k])) == lattice[k];
  rep.check("betti routes agree", same);
}

Ambient parse_ambient(const std::string& s) {
  if (s == "projective" || s == "hyperplane") return Ambient::Projective;
  if (s == "full") return Ambient::Full;
  throw InputError("--ambient: expected projective or full");
}

void cmd_resonance(const Input& in, Report& rep, uint32_t p, int q, int s, const std::string& ambient, bool check,
                   const EnumerationOptions& opt) {
  const Matroid& m = in.doc.matroid;
  if (!is_prime(p)) throw InputError("--p: not a prime");
  OSAlgebra a(m, Ring::prime(p));
  auto ps = resonance_point_set(a, q, s, parse_ambient(ambient), opt);
  auto& r = rep.results();
  r["p"] = p;
  r["q"] = q;
  r["s"] = s;
  r["count"] = ps.count;
  Json pts = Json::array();
  for (size_t i = 0; i < ps.points.size() && i < 200; ++i) pts.push_back(format_point(ps.points[i]));
  r["points_shown"] = pts;
  if (!ps.violations.empty()) rep.check("points in the hyperplane", false, ps.violations.front());
  if (check) {
    auto st = verify_structure(m, p, m.rank(), opt);
    for (auto& c : st.checks) rep.check(c);
    for (auto mode : {EnvelopeMode::Denham, EnvelopeMode::Covers}) {
      auto env = envelope_check(m, p, q, mode, IrreducibleMode::Connected, opt);
      std::string tag = mode == EnvelopeMode::Denham ? "denham" : "covers";
      r["envelope_" + tag] = {{"resonant", env.resonant}, {"envelope", env.envelope}, {"slack", env.slack}};
      rep.check("envelope contains R (" + tag + ")", env.contained,
                env.witnesses.empty() ? "" : "witness " + env.witnesses.front());
    }
  }
}

Json multinet_json(const Multinet& N) {
  Json parts = Json::array();
  for (ElemSet p : N.parts) parts.push_back(one_based(p));
  Json locus = Json::array();
  for (size_t i = 0; i < N.base_locus.size(); ++i)
    locus.push_back({{"flat", one_based(N.base_locus[i])}, {"order", N.orders[i]}});
  return {{"k", N.k},
          {"d", N.d},
          {"mode", N.mode == MultinetMode::Strict ? "strict" : "lenient"},
          {"parts", parts},
          {"multiplicities", ints(N.mult)},
          {"base_locus", locus},
          {"weak", !N.connected},
          {"reduced", N.reduced},
          {"net", N.net}};
}

void cmd_multinet(const Input& in, Report& rep, int k, int mmax, const std::string& mode, bool latin, int chen) {
  const Matroid& m = in.doc.matroid;
  SearchOptions opt;
  opt.m_max = mmax;
  if (mode == "strict")
    opt.mode = MultinetMode::Strict;
  else if (mode != "lenient")
    throw InputError("--mode: expected strict or lenient");
  auto& r = rep.results();
  std::vector<int> ks;
  if (k)
    ks.push_back(k);
  else
    for (int t = 3; t <= 5; ++t) ks.push_back(t);
  Json found = Json::array();
  for (int kk : ks)
    for (auto& N : search_multinets(m, kk, opt)) {
      Json j = multinet_json(N);
      auto id = multinet_identities(N);
      rep.check("identities k=" + std::to_string(N.k) + " d=" + std::to_string(N.d), id.all(), id.detail);
      auto rh = rh_check(m, N);
      j["rh"] = {{"lhs", rh.lhs}, {"rhs", rh.rhs}, {"slack", rh.slack}};
      if (latin && N.net) {
        Json sq = Json::array();
        for (auto& l : net_to_latin(m, N)) sq.push_back(l);
        j["latin"] = sq;
      }
      found.push_back(j);
    }
  r["multinets"] = found;
  auto comps = r1_components(m, mmax);
  Json cl = Json::array();
  for (auto& c : comps.components)
    cl.push_back({{"support", one_based(c.support)}, {"k", c.k}, {"local", c.local}, {"dim", c.basis.size()}});
  r["r1_components"] = cl;
  r["r1_complete"] = comps.complete;
  if (!comps.note.empty()) r["r1_note"] = comps.note;
  rep.check("R1 components meet only at 0", comps.disjoint, comps.note);
  if (chen >= 4) {
    auto cr = chen_conjecture_report(m, chen);
    Json rows = Json::array();
    for (auto& row : cr.rows) rows.push_back({{"r", row.r}, {"theta", row.lhs.get_str()}, {"census", row.rhs.get_str()}});
    r["chen_conjecture"] = {{"rows", rows}, {"partial", cr.partial}, {"first_disagreement", cr.first_disagreement}};
  }
}

void cmd_lie(const Input& in, Report& rep, int R, const std::string& ring_s, bool chen, bool decomposable) {
  const Matroid& m = in.doc.matroid;
  Ring ring = Ring::parse(ring_s);
  FlatLattice L(m);
  auto& r = rep.results();
  r["ring"] = ring.name();
  auto phi = holonomy_ranks(m, R, ring);
  Json pj = Json::array(), tj = Json::array();
  for (auto& g : phi) {
    pj.push_back(g.dim);
    tj.push_back({{"degree", g.degree}, {"invariant_factors", ints(g.torsion)}});
  }
  r["phi"] = pj;
  if (ring.kind == RingKind::Z) r["torsion"] = tj;
  Json loc = Json::array();
  for (int d = 1; d <= R; ++d) {
    Integer lb = local_holonomy_rank(L, d);
    loc.push_back(lb.get_si());
    if (d >= 2) rep.check("phi_" + std::to_string(d) + " >= local bound", Integer(static_cast<unsigned long>(phi[d - 1].dim)) >= lb);
  }
  r["local_phi"] = loc;
  Integer phi2 = 0;
  for (size_t f : L.level(2)) phi2 += binomial(L.flat(f).mobius, 2);
  if (R >= 2) rep.check("phi_2 = sum binom(mu,2)", Integer(static_cast<unsigned long>(phi[1].dim)) == phi2);
  if (L.is_supersolvable()) {
    auto lcs = lcs_from_betti(m, R);
    r["lcs_from_betti"] = ints(lcs);
    bool eq = true;
    for (int d = 1; d <= R; ++d) eq = eq && Integer(static_cast<unsigned long>(phi[d - 1].dim)) == lcs[d - 1];
    if (ring.kind == RingKind::Q) rep.check("supersolvable LCS formula", eq);
  }
  if (chen) {
    Ring cr = ring.kind == RingKind::Z ? Ring::rationals() : ring;
    auto theta = chen_ranks(m, std::max(R, 2), cr);
    theta.insert(theta.begin(), m.size());
    r["theta"] = ints(theta);
    Json lc = Json::array();
    for (int d = 1; d <= std::max(R, 2); ++d) {
      Integer lb = local_chen_rank(L, d);
      lc.push_back(lb.get_si());
      if (d >= 2)
        rep.check("theta_" + std::to_string(d) + " >= local bound", Integer(static_cast<unsigned long>(theta[d - 1])) >= lb);
    }
    r["local_theta"] = lc;
    for (int d = 1; d <= std::min(R, 3); ++d)
      rep.check("theta_" + std::to_string(d) + " = phi_" + std::to_string(d), theta[d - 1] == phi[d - 1].dim);
  }
  if (decomposable) {
    r["decomposable_Q"] = is_decomposable(m, Ring::rationals());
    r["decomposable_Z_approx"] = is_decomposable_z(m);
  }
}

// the whole invariant suite, scaled down on large inputs
void cmd_check(const Input& in, Report& rep, const EnumerationOptions& opt) {
  const Matroid& m = in.doc.matroid;
  const size_t n = m.size();
  FlatLattice L(m);
  auto& r = rep.results();
  r["n"] = n;
  r["rank"] = m.rank();
  bool idem = true;
  for (auto& f : L.flats()) idem = idem && m.closure(f.elements) == f.elements;
  if (n <= 12)
    for (ElemSet s = 0; s < (ElemSet(1) << n); ++s) idem = idem && m.closure(m.closure(s)) == m.closure(s);
  rep.check("closure idempotent", idem);
  auto lattice = betti_numbers(L);
  r["betti"] = ints(lattice);
  for (const char* f : {"Q", "F2", "F3"}) {
    OSAlgebra a(m, Ring::parse(f));
    auto nbc = a.betti();
    bool same = nbc.size() == lattice.size();
    for (size_t k = 0; same && k < nbc.size(); ++k)
      same = Integer(static_cast<unsigned long>(nbc[k])) == lattice[k] && a.elimination_dim(static_cast<int>(k)) == nbc[k];
    rep.check(std::string("betti routes agree over ") + f, same);
  }
  bool has_big = false;
  for (size_t f : L.level(2)) has_big = has_big || set_size(L.flat(f).elements) >= 3;
  for (uint32_t p : {2u, 3u}) {
    if (n > 10) break;
    auto st = verify_structure(m, p, m.rank(), opt);
    for (auto& c : st.checks) rep.check("F" + std::to_string(p) + " " + c.name, c.pass, c.detail);
  }
  if (has_big && n <= 10) {
    OSAlgebra a(m, Ring::prime(3));
    auto R1 = resonance_point_set(a, 1, 1, Ambient::Projective, opt);
    auto W = w1_support_point_set(w1_presentation(a), opt);
    r["R1_F3"] = R1.count;
    rep.check("W1 support = R1 over F3", R1.points == W.points && R1.count == W.count);
  }
  const int R = n <= 9 ? 4 : 3;
  auto phi = holonomy_ranks(m, R, Ring::rationals());
  const int T = n <= 10 ? 6 : 4;
  auto theta = chen_ranks(m, T, Ring::rationals());
  theta.insert(theta.begin(), n);
  Json pj = Json::array();
  for (auto& g : phi) pj.push_back(g.dim);
  r["phi"] = pj;
  r["theta"] = ints(theta);
  for (int d = 2; d <= R; ++d) {
    rep.check("phi_" + std::to_string(d) + " >= local bound",
              Integer(static_cast<unsigned long>(phi[d - 1].dim)) >= local_holonomy_rank(L, d));
    if (d <= 3) rep.check("theta_" + std::to_string(d) + " = phi_" + std::to_string(d), theta[d - 1] == phi[d - 1].dim);
  }
  for (int d = 2; d <= T; ++d)
    rep.check("theta_" + std::to_string(d) + " >= local bound",
              Integer(static_cast<unsigned long>(theta[d - 1])) >= local_chen_rank(L, d));
  rep.check("phi_2 = theta_2 = local", Integer(static_cast<unsigned long>(phi[1].dim)) == local_holonomy_rank(L, 2));
  if (L.is_supersolvable()) {
    auto lcs = lcs_from_betti(m, R);
    bool eq = true;
    for (int d = 1; d <= R; ++d) eq = eq && Integer(static_cast<unsigned long>(phi[d - 1].dim)) == lcs[d - 1];
    rep.check("supersolvable LCS formula", eq);
  }
  if (n <= 12) {
    auto comps = r1_components(m);
    r["r1_components"] = comps.components.size();
    rep.check("R1 components meet only at 0", comps.disjoint, comps.note);
    for (int k = 3; k <= 4; ++k)
      for (auto& N : search_multinets(m, k)) {
        auto id = multinet_identities(N);
        rep.check("identities on the " + std::to_string(N.k) + "-multinet with d=" + std::to_string(N.d), id.all(), id.detail);
        if (N.net) {
          bool closed = true;
          for (ElemSet p : N.parts) closed = closed && is_line_closed(m, p);
          rep.check("net parts line-closed", closed);
          net_to_latin(m, N);
        }
      }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matroid resonance and holonomy invariants"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  unsigned threads = 1;
  app.add_flag("--json", json, "JSON report on stdout");
  app.add_option("--threads", threads, "worker threads for enumerations")->check(CLI::Range(1u, 256u));
  std::string input;
  auto add_input = [&](CLI::App* c) { c->add_option("input", input, "matroid-v1 JSON file or catalog name")->required(); };

  auto* info = app.add_subcommand("info", "rank, connectivity, supersolvability, flat census");
  add_input(info);
  auto* betti = app.add_subcommand("betti", "Betti numbers by both routes");
  add_input(betti);
  std::string field = "Q";
  betti->add_option("--field", field);
  auto* res = app.add_subcommand("resonance", "resonance point sets over F_p");
  add_input(res);
  uint32_t p = 3;
  int q = 1, s = 1;
  std::string ambient = "projective";
  bool rcheck = false;
  res->add_option("--p", p);
  res->add_option("--q", q);
  res->add_option("--s", s);
  res->add_option("--ambient", ambient);
  res->add_flag("--check", rcheck, "verify the structure theorems and envelopes");
  auto* mn = app.add_subcommand("multinet", "multinet search, Latin squares, R1 components");
  add_input(mn);
  int k = 0, mmax = 1, chen_r = 0;
  std::string mode = "lenient";
  bool latin = false;
  mn->add_option("--k", k, "number of parts (default 3..5)");
  mn->add_option("--mmax", mmax);
  mn->add_option("--mode", mode);
  mn->add_flag("--latin", latin);
  mn->add_option("--chen", chen_r, "compare theta_r with the multinet census up to this degree");
  auto* lie = app.add_subcommand("lie", "holonomy and Chen ranks");
  add_input(lie);
  int maxdeg = 4;
  std::string ring = "Q";
  bool chen = false, decomp = false;
  lie->add_option("--max-degree", maxdeg);
  lie->add_option("--ring", ring);
  lie->add_flag("--chen", chen);
  lie->add_flag("--decomposable", decomp);
  auto* chk = app.add_subcommand("check", "full invariant suite");
  add_input(chk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  EnumerationOptions opt;
  opt.threads = threads;
  auto t0 = std::chrono::steady_clock::now();
  try {
    Input in = load_input(input);
    auto* sub = app.get_subcommands().front();
    Report rep(sub->get_name(), in);
    if (sub == info) cmd_info(in, rep);
    if (sub == betti) cmd_betti(in, rep, field);
    if (sub == res) cmd_resonance(in, rep, p, q, s, ambient, rcheck, opt);
    if (sub == mn) cmd_multinet(in, rep, k, mmax, mode, latin, chen_r);
    if (sub == lie) cmd_lie(in, rep, maxdeg, ring, chen, decomp);
    if (sub == chk) cmd_check(in, rep, opt);
    rep.emit(json, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    return rep.ok() ? 0 : 1;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

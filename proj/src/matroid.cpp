#include "mres/matroid.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "mres/matrix.hpp"

namespace mres {

std::vector<int> elements_of(ElemSet s) {
  std::vector<int> out;
  while (s) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

ElemSet set_of(const std::vector<int>& elems) {
  ElemSet s = 0;
  for (int e : elems) s |= bit(static_cast<size_t>(e));
  return s;
}

std::string format_set(ElemSet s) {
  std::string out = "{";
  bool first = true;
  for (int e : elements_of(s)) {
    if (!first) out += ",";
    out += std::to_string(e + 1);
    first = false;
  }
  return out + "}";
}

std::string kind_name(MatroidKind k) {
  switch (k) {
    case MatroidKind::Circuits: return "circuits";
    case MatroidKind::Uniform: return "uniform";
    case MatroidKind::Graphic: return "graphic";
    case MatroidKind::Realization: return "realization";
    case MatroidKind::Lines: return "lines";
  }
  return "?";
}

Matroid::Matroid(size_t n, std::vector<ElemSet> circuits, MatroidKind kind)
    : n_(n), circuits_(std::move(circuits)), kind_(kind) {
  if (n > kMaxGround) throw InputError("ground set larger than 64 elements");
  std::sort(circuits_.begin(), circuits_.end());
  circuits_.erase(std::unique(circuits_.begin(), circuits_.end()), circuits_.end());
  rank_ = rank(ground());
}

bool Matroid::is_independent(ElemSet s) const {
  for (ElemSet c : circuits_)
    if (subset_of(c, s)) return false;
  return true;
}

int Matroid::rank(ElemSet s) const {
  ElemSet indep = 0;
  for (ElemSet rest = s; rest; rest &= rest - 1) {
    ElemSet e = rest & (~rest + 1);
    if (is_independent(indep | e)) indep |= e;
  }
  return set_size(indep);
}

ElemSet Matroid::closure(ElemSet s) const {
  int r = rank(s);
  ElemSet out = s;
  for (size_t e = 0; e < n_; ++e)
    if (!(s & bit(e)) && rank(s | bit(e)) == r) out |= bit(e);
  return out;
}

namespace {

void require_simple(size_t n, const std::vector<ElemSet>& circuits) {
  for (ElemSet c : circuits) {
    if (c == 0 || (n < 64 && (c >> n)))
      throw InputError("circuit " + format_set(c) + " is outside the ground set");
    if (set_size(c) <= 2)
      throw InputError("matroid is not simple: circuit " + format_set(c) + " has size " +
                       std::to_string(set_size(c)));
  }
}

}  // namespace

Matroid matroid_from_circuits(size_t n, const std::vector<ElemSet>& circuits) {
  if (n > kMaxGround) throw InputError("ground set larger than 64 elements");
  require_simple(n, circuits);
  for (size_t i = 0; i < circuits.size(); ++i)
    for (size_t j = 0; j < circuits.size(); ++j) {
      if (i == j) continue;
      if (circuits[i] == circuits[j])
        throw InputError("circuit " + format_set(circuits[i]) + " listed twice");
      if (subset_of(circuits[i], circuits[j]))
        throw InputError("circuit axiom fails: " + format_set(circuits[i]) + " is contained in " +
                         format_set(circuits[j]));
    }
  // elimination: C1 != C2, e in both => some circuit inside (C1 u C2) - e
  for (size_t i = 0; i < circuits.size(); ++i)
    for (size_t j = i + 1; j < circuits.size(); ++j) {
      ElemSet common = circuits[i] & circuits[j];
      ElemSet uni = circuits[i] | circuits[j];
      for (int e : elements_of(common)) {
        ElemSet target = uni & ~bit(static_cast<size_t>(e));
        bool ok = std::any_of(circuits.begin(), circuits.end(),
                              [&](ElemSet c) { return subset_of(c, target); });
        if (!ok)
          throw InputError("circuit elimination fails for " + format_set(circuits[i]) + " and " +
                           format_set(circuits[j]) + " at element " + std::to_string(e + 1));
      }
    }
  return Matroid(n, circuits, MatroidKind::Circuits);
}

Matroid uniform_matroid(int r, size_t n) {
  if (r < 0 || static_cast<size_t>(r) > n) throw InputError("uniform matroid needs 0 <= r <= n");
  if (r < 2 && n > static_cast<size_t>(r)) throw InputError("uniform matroid with r < 2 and r < n is not simple");
  std::vector<ElemSet> circuits;
  if (static_cast<size_t>(r) < n) for_each_subset_of_size(n, r + 1, [&](ElemSet s) { circuits.push_back(s); });
  return Matroid(n, std::move(circuits), MatroidKind::Uniform);
}

Matroid graphic_matroid(const Graph& g) {
  const size_t m = g.edges.size();
  if (m > kMaxGround) throw InputError("graph has more than 64 edges");
  std::set<std::pair<int, int>> seen;
  std::vector<std::vector<std::pair<int, int>>> adj(static_cast<size_t>(g.vertices));
  for (size_t e = 0; e < m; ++e) {
    auto [a, b] = g.edges[e];
    if (a < 0 || b < 0 || a >= g.vertices || b >= g.vertices)
      throw InputError("edge " + std::to_string(e + 1) + " has an endpoint outside the vertex range");
    if (a == b) throw InputError("graph is not simple: loop at edge " + std::to_string(e + 1));
    if (!seen.insert({std::min(a, b), std::max(a, b)}).second)
      throw InputError("graph is not simple: parallel edge " + std::to_string(e + 1));
    adj[static_cast<size_t>(a)].emplace_back(b, static_cast<int>(e));
    adj[static_cast<size_t>(b)].emplace_back(a, static_cast<int>(e));
  }
  std::set<ElemSet> cycles;
  // simple cycles whose smallest vertex is s
  for (int s = 0; s < g.vertices; ++s) {
    std::vector<char> on_path(static_cast<size_t>(g.vertices), 0);
    auto dfs = [&](auto&& self, int v, ElemSet used, int depth) -> void {
      for (auto [w, e] : adj[static_cast<size_t>(v)]) {
        if (used & bit(static_cast<size_t>(e))) continue;
        if (w == s && depth >= 2) {
          cycles.insert(used | bit(static_cast<size_t>(e)));
          continue;
        }
        if (w <= s || on_path[static_cast<size_t>(w)]) continue;
        on_path[static_cast<size_t>(w)] = 1;
        self(self, w, used | bit(static_cast<size_t>(e)), depth + 1);
        on_path[static_cast<size_t>(w)] = 0;
      }
    };
    on_path[static_cast<size_t>(s)] = 1;
    dfs(dfs, s, 0, 0);
  }
  return Matroid(m, std::vector<ElemSet>(cycles.begin(), cycles.end()), MatroidKind::Graphic);
}

Matroid realization_matroid(const std::vector<std::vector<Rational>>& matrix) {
  const size_t rows = matrix.size();
  const size_t n = rows ? matrix[0].size() : 0;
  for (auto& row : matrix)
    if (row.size() != n) throw InputError("realization matrix rows have different lengths");
  if (n > kMaxGround) throw InputError("more than 64 columns");
  auto col_rank = [&](ElemSet s) {
    EchelonQ ech(rows);
    for (int c : elements_of(s)) {
      std::vector<std::pair<uint32_t, Rational>> v;
      for (size_t r = 0; r < rows; ++r)
        if (sgn(matrix[r][static_cast<size_t>(c)]) != 0) v.emplace_back(static_cast<uint32_t>(r), matrix[r][static_cast<size_t>(c)]);
      ech.insert_rational(v);
    }
    return static_cast<int>(ech.rank());
  };
  int total = col_rank(full_set(n));
  std::vector<ElemSet> circuits;
  for (int k = 1; k <= total + 1; ++k)
    for_each_subset_of_size(n, k, [&](ElemSet s) {
      for (ElemSet c : circuits)
        if (subset_of(c, s)) return;
      if (col_rank(s) < k) circuits.push_back(s);
    });
  for (ElemSet c : circuits)
    if (set_size(c) <= 2)
      throw InputError("realization is not simple: columns " + format_set(c) + " are dependent");
  return Matroid(n, std::move(circuits), MatroidKind::Realization);
}

Matroid lines_matroid(size_t n, const std::vector<ElemSet>& lines) {
  if (n > kMaxGround) throw InputError("ground set larger than 64 elements");
  for (size_t i = 0; i < lines.size(); ++i) {
    if (n < 64 && (lines[i] >> n)) throw InputError("line " + format_set(lines[i]) + " leaves the ground set");
    if (set_size(lines[i]) < 2) throw InputError("line " + format_set(lines[i]) + " has fewer than two points");
    for (size_t j = i + 1; j < lines.size(); ++j)
      if (set_size(lines[i] & lines[j]) > 1)
        throw InputError("lines " + format_set(lines[i]) + " and " + format_set(lines[j]) +
                         " share more than one point");
  }
  std::vector<ElemSet> triples;
  for (ElemSet l : lines)
    if (set_size(l) >= 3) for_each_subset_of_size(n, 3, [&](ElemSet s) {
        if (subset_of(s, l)) triples.push_back(s);
      });
  std::vector<ElemSet> circuits = triples;
  for_each_subset_of_size(n, 4, [&](ElemSet s) {
    for (ElemSet t : triples)
      if (subset_of(t, s)) return;
    circuits.push_back(s);
  });
  return Matroid(n, std::move(circuits), MatroidKind::Lines);
}

std::vector<ElemSet> components(const Matroid& m) {
  const size_t n = m.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (ElemSet c : m.circuits()) {
    auto el = elements_of(c);
    for (size_t i = 1; i < el.size(); ++i) parent[find(static_cast<size_t>(el[i]))] = find(static_cast<size_t>(el[0]));
  }
  std::vector<ElemSet> comp(n, 0);
  for (size_t e = 0; e < n; ++e) comp[find(e)] |= bit(e);
  std::vector<ElemSet> out;
  for (ElemSet c : comp)
    if (c) out.push_back(c);
  std::sort(out.begin(), out.end(), [](ElemSet a, ElemSet b) { return std::countr_zero(a) < std::countr_zero(b); });
  return out;
}

bool is_connected(const Matroid& m) { return components(m).size() <= 1; }

Matroid restriction(const Matroid& m, ElemSet s) {
  auto el = elements_of(s);
  std::vector<int> index(m.size(), -1);
  for (size_t i = 0; i < el.size(); ++i) index[static_cast<size_t>(el[i])] = static_cast<int>(i);
  std::vector<ElemSet> circuits;
  for (ElemSet c : m.circuits()) {
    if (!subset_of(c, s)) continue;
    ElemSet mapped = 0;
    for (int e : elements_of(c)) mapped |= bit(static_cast<size_t>(index[static_cast<size_t>(e)]));
    circuits.push_back(mapped);
  }
  return Matroid(el.size(), std::move(circuits), m.kind());
}

Matroid localization(const Matroid& m, ElemSet x) {
  if (!m.is_flat(x)) throw InputError(format_set(x) + " is not a flat");
  return restriction(m, x);
}

Matroid direct_sum(const Matroid& a, const Matroid& b) {
  if (a.size() + b.size() > kMaxGround) throw InputError("direct sum exceeds 64 elements");
  std::vector<ElemSet> circuits = a.circuits();
  for (ElemSet c : b.circuits()) circuits.push_back(c << a.size());
  return Matroid(a.size() + b.size(), std::move(circuits), MatroidKind::Circuits);
}

bool is_line_closed(const Matroid& m, ElemSet s) {
  auto el = elements_of(s);
  for (size_t i = 0; i < el.size(); ++i)
    for (size_t j = i + 1; j < el.size(); ++j)
      if (!subset_of(m.closure(bit(static_cast<size_t>(el[i])) | bit(static_cast<size_t>(el[j]))), s)) return false;
  return true;
}

std::vector<ElemSet> long_lines(const Matroid& m) {
  std::set<ElemSet> out;
  for (size_t i = 0; i < m.size(); ++i)
    for (size_t j = i + 1; j < m.size(); ++j) {
      ElemSet l = m.closure(bit(i) | bit(j));
      if (set_size(l) >= 3) out.insert(l);
    }
  return {out.begin(), out.end()};
}

}  // namespace mres

#include "mres/catalog.hpp"

#include <map>
#include <regex>

#include "mres/os_algebra.hpp"

namespace mres {

const std::map<std::string, std::string>& catalog_sources();

Graph complete_graph(int v) {
  Graph g{v, {}};
  for (int i = 0; i < v; ++i)
    for (int j = i + 1; j < v; ++j) g.edges.emplace_back(i, j);
  return g;
}

Graph cycle_graph(int v) {
  Graph g{v, {}};
  for (int i = 0; i < v; ++i) g.edges.emplace_back(i, (i + 1) % v);
  return g;
}

namespace {

void self_check(const std::string& name, const MatroidDocument& doc) {
  const Json& c = doc.checks;
  if (c.is_null()) return;
  auto bad = [&](const std::string& what) { throw ConsistencyError("catalog entry " + name + ": " + what); };
  const Matroid& m = doc.matroid;
  if (c.contains("points") && c["points"].get<size_t>() != m.size()) bad("point count");
  FlatLattice L(m);
  if (c.contains("l2")) {
    std::map<int, int> census;
    for (size_t i : L.level(2)) census[set_size(L.flat(i).elements)]++;
    std::map<int, int> want;
    for (auto& [k, v] : c["l2"].items()) want[std::stoi(k)] = v.get<int>();
    if (census != want) bad("rank-2 flat census");
  }
  if (c.contains("betti")) {
    auto b = betti_numbers(L);
    auto want = c["betti"].get<std::vector<long>>();
    if (b.size() != want.size()) bad("Betti numbers");
    for (size_t i = 0; i < b.size(); ++i)
      if (b[i] != want[i]) bad("Betti numbers");
  }
  if (c.contains("phi2")) {
    long s = 0;
    for (size_t i : L.level(2)) {
      long mu = L.flat(i).mobius;
      s += mu * (mu - 1) / 2;
    }
    if (s != c["phi2"].get<long>()) bad("phi_2");
  }
}

}  // namespace

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (auto& [k, v] : catalog_sources()) out.push_back(k);
  return out;
}

bool is_catalog_name(const std::string& name) {
  static const std::regex gen(R"((uniform-\d+-\d+)|(complete-\d+)|(cycle-\d+))");
  return catalog_sources().count(name) || std::regex_match(name, gen);
}

MatroidDocument load_catalog(const std::string& name) {
  auto& src = catalog_sources();
  auto it = src.find(name);
  if (it != src.end()) {
    MatroidDocument d = parse_document_text(it->second);
    self_check(name, d);
    return d;
  }
  std::smatch m;
  static const std::regex uni(R"(uniform-(\d+)-(\d+))"), kv(R"(complete-(\d+))"), cv(R"(cycle-(\d+))");
  MatroidDocument d;
  if (std::regex_match(name, m, uni)) {
    int r = std::stoi(m[1]), n = std::stoi(m[2]);
    if (n > 64 || r > n) throw InputError("catalog: bad uniform parameters in " + name);
    d.matroid = uniform_matroid(r, static_cast<size_t>(n));
  } else if (std::regex_match(name, m, kv)) {
    int v = std::stoi(m[1]);
    if (v < 1 || v * (v - 1) / 2 > 64) throw InputError("catalog: " + name + " is too large");
    d.matroid = graphic_matroid(complete_graph(v));
  } else if (std::regex_match(name, m, cv)) {
    int v = std::stoi(m[1]);
    if (v < 3 || v > 64) throw InputError("catalog: " + name + " out of range");
    d.matroid = graphic_matroid(cycle_graph(v));
  } else {
    throw InputError("unknown catalog name '" + name + "'");
  }
  return d;
}

}  // namespace mres

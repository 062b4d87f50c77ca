#include "mres/document.hpp"

namespace mres {

namespace {

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) { throw InputError(ptr + ": " + msg); }

const Json& field(const Json& obj, const std::string& key, const std::string& ptr) {
  if (!obj.is_object()) fail(ptr, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) fail(ptr + "/" + key, "missing");
  return *it;
}

long as_int(const Json& v, const std::string& ptr) {
  if (!v.is_number_integer()) fail(ptr, "expected an integer");
  return v.get<long>();
}

ElemSet as_set(const Json& v, size_t n, const std::string& ptr) {
  if (!v.is_array()) fail(ptr, "expected an array of element indices");
  ElemSet s = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    long e = as_int(v[i], ptr + "/" + std::to_string(i));
    if (e < 1 || static_cast<size_t>(e) > n) fail(ptr + "/" + std::to_string(i), "element out of range 1.." + std::to_string(n));
    if (s & bit(static_cast<size_t>(e - 1))) fail(ptr + "/" + std::to_string(i), "repeated element");
    s |= bit(static_cast<size_t>(e - 1));
  }
  return s;
}

Rational as_rational(const Json& v, const std::string& ptr) {
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (!v.is_string()) fail(ptr, "expected a rational string such as \"-3/4\"");
  Rational q;
  if (q.set_str(v.get<std::string>(), 10) != 0) fail(ptr, "not a rational: " + v.get<std::string>());
  if (q.get_den() == 0) fail(ptr, "zero denominator");
  q.canonicalize();
  return q;
}

Matroid build(const Json& def, size_t n, const std::string& ptr) {
  const Json& kindv = field(def, "kind", ptr);
  if (!kindv.is_string()) fail(ptr + "/kind", "expected a string");
  std::string kind = kindv.get<std::string>();
  if (kind == "circuits") {
    const Json& cs = field(def, "circuits", ptr);
    if (!cs.is_array()) fail(ptr + "/circuits", "expected an array");
    std::vector<ElemSet> circ;
    for (size_t i = 0; i < cs.size(); ++i) circ.push_back(as_set(cs[i], n, ptr + "/circuits/" + std::to_string(i)));
    return matroid_from_circuits(n, circ);
  }
  if (kind == "uniform") {
    long r = as_int(field(def, "rank", ptr), ptr + "/rank");
    if (r < 0 || static_cast<size_t>(r) > n) fail(ptr + "/rank", "rank must lie in 0..n");
    return uniform_matroid(static_cast<int>(r), n);
  }
  if (kind == "graph") {
    long v = as_int(field(def, "vertices", ptr), ptr + "/vertices");
    if (v < 0) fail(ptr + "/vertices", "negative");
    const Json& es = field(def, "edges", ptr);
    if (!es.is_array()) fail(ptr + "/edges", "expected an array");
    if (es.size() != n) fail(ptr + "/edges", "edge count must equal n");
    Graph g{static_cast<int>(v), {}};
    for (size_t i = 0; i < es.size(); ++i) {
      std::string p = ptr + "/edges/" + std::to_string(i);
      if (!es[i].is_array() || es[i].size() != 2) fail(p, "expected [i, j]");
      long a = as_int(es[i][0], p + "/0"), b = as_int(es[i][1], p + "/1");
      if (a < 1 || a > v || b < 1 || b > v) fail(p, "vertex out of range");
      g.edges.emplace_back(a - 1, b - 1);
    }
    return graphic_matroid(g);
  }
  if (kind == "realization") {
    const Json& rows = field(def, "matrix", ptr);
    if (!rows.is_array() || rows.empty()) fail(ptr + "/matrix", "expected a nonempty array of rows");
    std::vector<std::vector<Rational>> m;
    for (size_t i = 0; i < rows.size(); ++i) {
      std::string p = ptr + "/matrix/" + std::to_string(i);
      if (!rows[i].is_array() || rows[i].size() != n) fail(p, "each row needs n entries");
      std::vector<Rational> row;
      for (size_t j = 0; j < n; ++j) row.push_back(as_rational(rows[i][j], p + "/" + std::to_string(j)));
      m.push_back(std::move(row));
    }
    return realization_matroid(m);
  }
  if (kind == "lines") {
    const Json& ls = field(def, "lines", ptr);
    if (!ls.is_array()) fail(ptr + "/lines", "expected an array");
    std::vector<ElemSet> lines;
    for (size_t i = 0; i < ls.size(); ++i) lines.push_back(as_set(ls[i], n, ptr + "/lines/" + std::to_string(i)));
    return lines_matroid(n, lines);
  }
  fail(ptr + "/kind", "unknown kind '" + kind + "'");
}

}  // namespace

MatroidDocument parse_document(const Json& doc) {
  const Json& fmt = field(doc, "format", "");
  if (fmt != "matroid-v1") fail("/format", "expected \"matroid-v1\"");
  long n = as_int(field(doc, "n", ""), "/n");
  if (n < 0 || n > 64) fail("/n", "ground set size must be in 0..64");
  MatroidDocument out;
  if (doc.contains("labels")) {
    const Json& l = doc["labels"];
    if (!l.is_array() || l.size() != static_cast<size_t>(n)) fail("/labels", "expected n strings");
    for (size_t i = 0; i < l.size(); ++i) {
      if (!l[i].is_string()) fail("/labels/" + std::to_string(i), "expected a string");
      out.labels.push_back(l[i].get<std::string>());
    }
  }
  try {
    out.matroid = build(field(doc, "definition", ""), static_cast<size_t>(n), "/definition");
  } catch (const InputError& e) {
    std::string msg = e.what();
    if (msg.rfind("/definition", 0) == 0) throw;
    fail("/definition", msg);
  }
  if (doc.contains("checks")) out.checks = doc["checks"];
  return out;
}

MatroidDocument parse_document_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
  return parse_document(j);
}

Json to_document(const Matroid& m, const std::vector<std::string>& labels) {
  Json circ = Json::array();
  for (ElemSet c : m.circuits()) {
    Json a = Json::array();
    for (int e : elements_of(c)) a.push_back(e + 1);
    circ.push_back(a);
  }
  Json doc = {{"format", "matroid-v1"}, {"n", m.size()}, {"definition", {{"kind", "circuits"}, {"circuits", circ}}}};
  if (!labels.empty()) doc["labels"] = labels;
  return doc;
}

}  // namespace mres

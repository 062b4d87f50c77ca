#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mres/lattice.hpp"

namespace mres {

// strict: cross-part spans must be irreducible rank-2 flats (strict lattice
// predicate); lenient: rank 2 is enough.
enum class MultinetMode { Strict, Lenient };

struct Multinet {
  MultinetMode mode = MultinetMode::Lenient;
  std::vector<ElemSet> parts;
  std::vector<int> mult;  // per element of the ground set
  int k = 0, d = 0;
  std::vector<ElemSet> base_locus;  // sorted
  std::vector<int> orders;          // n_X, aligned with base_locus
  bool connected = false;           // condition (4); false means weak only
  bool reduced = false;
  // every base-locus flat meets every part; equivalent to identity (ii),
  // fails for lenient-mode partitions that only satisfy the conditioned (3)
  bool meets_all_parts = false;
  bool net = false;
  int part_of(int u) const;
};

struct Violation {
  int condition = 0;  // 1..4 as in the definition, 0 for malformed input
  std::string witness;
};

struct MultinetCheck {
  std::optional<Multinet> multinet;  // set when (1)-(3) hold
  std::optional<Violation> violation;
};

// Checks (1)-(4).  The base locus is the set of cross-part spans unless a
// locus is declared, in which case every cross-part span must belong to it
// and (3), (4) are read against the declared set.
MultinetCheck verify_multinet(const Matroid& m, const std::vector<ElemSet>& parts, const std::vector<int>& mult,
                              MultinetMode mode = MultinetMode::Lenient,
                              const std::vector<ElemSet>* declared_locus = nullptr);

struct IdentityReport {
  bool sum = false;      // sum m_u = k d
  bool orders = false;   // sum_{X containing u} n_X = d for every u
  bool squares = false;  // sum n_X^2 = d^2
  std::string detail;
  bool all() const { return sum && orders && squares; }
};
IdentityReport multinet_identities(const Multinet& n);

struct RHReport {
  long lhs = 0, rhs = 0, slack = 0;
  bool holds = false;
};
RHReport rh_check(const Matroid& m, const Multinet& n);

// split each part into the components of the graph whose edges are same-part
// pairs spanning a flat outside the base locus, then re-verify with the
// same locus declared
MultinetCheck refine_weak(const Matroid& m, const Multinet& n);

struct SearchOptions {
  int m_max = 1;
  MultinetMode mode = MultinetMode::Lenient;
  bool include_weak = false;
  uint64_t node_budget = 50000000;
};
// canonical partitions (element 0 in part 0, parts ordered by least element),
// multiplicities up to m_max with gcd 1; only partitions whose base-locus
// flats meet every part are returned
std::vector<Multinet> search_multinets(const Matroid& m, int k, const SearchOptions& opt = {});

using LatinSquare = std::vector<std::vector<int>>;  // symbols 1..d
bool is_latin(const LatinSquare& l);
bool orthogonal(const LatinSquare& a, const LatinSquare& b);
// same square up to row, column and symbol relabeling (d <= 6)
bool isotopic(const LatinSquare& a, const LatinSquare& b);
// k-2 squares, one per part after the first two
std::vector<LatinSquare> net_to_latin(const Matroid& m, const Multinet& n);
struct KawaharaResult {
  Matroid matroid;
  Multinet net;
};
KawaharaResult latin_to_matroid(const LatinSquare& l);

// P_N spanned by w_i - w_1, w_i = sum_{u in E_i} m_u e_u, as vectors of length n
std::vector<std::vector<Rational>> subspace_of_multinet(const Multinet& n, size_t ground);

struct R1Component {
  ElemSet support = 0;  // ground set of the sub-matroid carrying the multinet
  int k = 0;
  bool local = false;  // singleton parts on a rank-2 flat
  Multinet multinet;   // indices relative to the sub-matroid
  std::vector<std::vector<Rational>> basis;  // in the coordinates of M
};
struct R1Components {
  std::vector<R1Component> components;  // depth 1; depth s keeps those with k >= s+2
  bool complete = true;
  bool disjoint = true;  // pairwise intersections are {0}
  std::string note;
  std::vector<const R1Component*> at_depth(int s) const;
};
// local components from the rank-2 flats of size >= 3, plus a multinet search
// with k = 3..5 on every restriction of rank >= 3 and size >= 6 (n <= 12; above
// that only flats are searched and the result is marked incomplete)
R1Components r1_components(const Matroid& m, int m_max = 1);
// number of F_p points in the union of the components (each reduced mod p)
uint64_t component_point_count(const R1Components& c, size_t ground, uint32_t p);

// theta_r against (r-1) sum over depth-1 components of binom(k+r-3, r), each
// component counted once (local ones with k = |X|), for r = 4..R
struct ChenConjectureRow {
  int r = 0;
  Integer lhs, rhs;
};
struct ChenConjectureReport {
  std::vector<ChenConjectureRow> rows;
  std::map<int, int> census;  // k -> number of components
  bool partial = false;
  int first_disagreement = 0;  // 0 when all rows agree
  std::string note;
};
ChenConjectureReport chen_conjecture_report(const Matroid& m, int R);

}  // namespace mres

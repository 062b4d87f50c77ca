#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mres/ring.hpp"

namespace mres {

// Subsets of the ground set as bitmasks; element i (0-based) is bit i.
using ElemSet = uint64_t;
constexpr size_t kMaxGround = 64;

inline int set_size(ElemSet s) { return std::popcount(s); }
inline bool subset_of(ElemSet a, ElemSet b) { return (a & ~b) == 0; }
inline ElemSet bit(size_t i) { return ElemSet(1) << i; }
inline ElemSet full_set(size_t n) { return n >= 64 ? ~ElemSet(0) : (ElemSet(1) << n) - 1; }
std::vector<int> elements_of(ElemSet s);
ElemSet set_of(const std::vector<int>& elems);
// 1-based rendering, e.g. "{1,4,6}"
std::string format_set(ElemSet s);

// k-subsets of [n] in increasing numeric order (Gosper's hack)
template <class F>
void for_each_subset_of_size(size_t n, int k, F&& f) {
  if (k < 0 || static_cast<size_t>(k) > n) return;
  if (k == 0) {
    f(ElemSet(0));
    return;
  }
  ElemSet s = (ElemSet(1) << k) - 1;
  const ElemSet limit = n >= 64 ? 0 : ElemSet(1) << n;
  while (true) {
    f(s);
    ElemSet c = s & (~s + 1);
    ElemSet r = s + c;
    if (r == 0) break;
    s = (((r ^ s) >> 2) / c) | r;
    if (limit && s >= limit) break;
  }
}

enum class MatroidKind { Circuits, Uniform, Graphic, Realization, Lines };
std::string kind_name(MatroidKind k);

struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based endpoints
};

class Matroid {
 public:
  Matroid() = default;
  Matroid(size_t n, std::vector<ElemSet> circuits, MatroidKind kind);

  size_t size() const { return n_; }
  ElemSet ground() const { return full_set(n_); }
  const std::vector<ElemSet>& circuits() const { return circuits_; }
  MatroidKind kind() const { return kind_; }

  bool is_independent(ElemSet s) const;
  int rank(ElemSet s) const;
  int rank() const { return rank_; }
  ElemSet closure(ElemSet s) const;
  bool is_flat(ElemSet s) const { return closure(s) == s; }

  // same circuit family
  bool operator==(const Matroid& o) const { return n_ == o.n_ && circuits_ == o.circuits_; }

 private:
  size_t n_ = 0;
  std::vector<ElemSet> circuits_;  // sorted
  MatroidKind kind_ = MatroidKind::Circuits;
  int rank_ = 0;
};

// Constructors for the five input kinds.  Elements are 0-based here.
Matroid matroid_from_circuits(size_t n, const std::vector<ElemSet>& circuits);
Matroid uniform_matroid(int r, size_t n);
Matroid graphic_matroid(const Graph& g);
// columns of the matrix are the points
Matroid realization_matroid(const std::vector<std::vector<Rational>>& matrix);
Matroid lines_matroid(size_t n, const std::vector<ElemSet>& lines);

bool is_connected(const Matroid& m);
// connected components as element sets
std::vector<ElemSet> components(const Matroid& m);
// restriction to S, relabelled to 0..|S|-1 in increasing order
Matroid restriction(const Matroid& m, ElemSet s);
// localization at a flat; throws InputError when X is not a flat
Matroid localization(const Matroid& m, ElemSet x);
Matroid direct_sum(const Matroid& a, const Matroid& b);
bool is_line_closed(const Matroid& m, ElemSet s);

// Lines (rank-2 flats) of a rank-3 matroid with at least three points.
std::vector<ElemSet> long_lines(const Matroid& m);

}  // namespace mres

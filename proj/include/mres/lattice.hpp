#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "mres/matroid.hpp"

namespace mres {

// Which flats count as irreducible.
//  strict:    X differs from the meet of all flats strictly above it and is not
//             the intersection of two incomparable flats strictly above it
//  lenient:   rank-2 flats always count, otherwise as strict
//  connected: the localization M_X is a connected matroid
enum class IrreducibleMode { Strict, Lenient, Connected };

struct Flat {
  ElemSet elements = 0;
  int rank = 0;
  long mobius = 0;
  bool irreducible = false;  // strict predicate
  bool connected = false;
  bool modular = false;
};

class FlatLattice {
 public:
  explicit FlatLattice(const Matroid& m, size_t max_flats = 50000);

  const Matroid& matroid() const { return m_; }
  int rank() const { return m_.rank(); }
  const std::vector<Flat>& flats() const { return flats_; }
  const Flat& flat(size_t i) const { return flats_[i]; }
  // indices of rank-k flats in increasing element order
  // empty above the rank
  const std::vector<size_t>& level(int k) const {
    static const std::vector<size_t> none;
    return k >= 0 && static_cast<size_t>(k) < levels_.size() ? levels_[static_cast<size_t>(k)] : none;
  }
  std::vector<ElemSet> flats_of_rank(int k) const;
  std::optional<size_t> index_of(ElemSet x) const;
  // flats covering flat i
  const std::vector<size_t>& covers(size_t i) const { return up_[i]; }

  bool irreducible(size_t i, IrreducibleMode mode) const;
  long mobius(ElemSet x) const;
  ElemSet join(ElemSet a, ElemSet b) const { return m_.closure(a | b); }

  // a maximal chain of modular flats from bottom to top, if one exists
  std::optional<std::vector<ElemSet>> supersolvable_chain() const;
  bool is_supersolvable() const { return supersolvable_chain().has_value(); }

 private:
  Matroid m_;
  std::vector<Flat> flats_;
  std::vector<std::vector<size_t>> levels_;
  std::vector<std::vector<size_t>> up_;
  std::unordered_map<ElemSet, size_t> index_;
};

}  // namespace mres

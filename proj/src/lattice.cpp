#include "mres/lattice.hpp"

#include <algorithm>
#include <functional>

namespace mres {

FlatLattice::FlatLattice(const Matroid& m, size_t max_flats) : m_(m) {
  const int top = m.rank();
  const size_t n = m.size();
  levels_.resize(static_cast<size_t>(top) + 1);
  auto add = [&](ElemSet x, int r) -> size_t {
    auto it = index_.find(x);
    if (it != index_.end()) return it->second;
    if (flats_.size() >= max_flats)
      throw BudgetExceeded("lattice of flats exceeds " + std::to_string(max_flats) + " flats");
    size_t id = flats_.size();
    flats_.push_back(Flat{x, r});
    up_.emplace_back();
    index_.emplace(x, id);
    return id;
  };
  add(m.closure(0), 0);
  std::vector<size_t> frontier{0};
  for (int r = 0; r < top; ++r) {
    std::vector<size_t> next;
    for (size_t id : frontier) {
      ElemSet x = flats_[id].elements;
      ElemSet seen = x;
      for (size_t e = 0; e < n; ++e) {
        if (seen & bit(e)) continue;
        ElemSet y = m.closure(x | bit(e));
        seen |= y;
        size_t before = flats_.size();
        size_t yid = add(y, r + 1);
        if (yid == before) next.push_back(yid);
        up_[id].push_back(yid);
      }
    }
    frontier = std::move(next);
  }
  // renumber so that flats are sorted by rank, then by element order
  std::vector<size_t> order(flats_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (flats_[a].rank != flats_[b].rank) return flats_[a].rank < flats_[b].rank;
    return flats_[a].elements < flats_[b].elements;
  });
  std::vector<size_t> newid(order.size());
  for (size_t i = 0; i < order.size(); ++i) newid[order[i]] = i;
  std::vector<Flat> f2(order.size());
  std::vector<std::vector<size_t>> up2(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    f2[i] = flats_[order[i]];
    for (size_t u : up_[order[i]]) up2[i].push_back(newid[u]);
    std::sort(up2[i].begin(), up2[i].end());
  }
  flats_ = std::move(f2);
  up_ = std::move(up2);
  index_.clear();
  for (size_t i = 0; i < flats_.size(); ++i) {
    index_[flats_[i].elements] = i;
    levels_[static_cast<size_t>(flats_[i].rank)].push_back(i);
  }

  // Moebius function by the defining recursion
  for (size_t i = 0; i < flats_.size(); ++i) {
    if (flats_[i].rank == 0) {
      flats_[i].mobius = 1;
      continue;
    }
    long s = 0;
    for (size_t j = 0; j < i; ++j)
      if (flats_[j].rank < flats_[i].rank && subset_of(flats_[j].elements, flats_[i].elements))
        s += flats_[j].mobius;
    flats_[i].mobius = -s;
  }

  const ElemSet E = m.ground();
  for (size_t i = 0; i < flats_.size(); ++i) {
    Flat& f = flats_[i];
    std::vector<ElemSet> above;
    for (size_t j = 0; j < flats_.size(); ++j)
      if (flats_[j].rank > f.rank && subset_of(f.elements, flats_[j].elements)) above.push_back(flats_[j].elements);
    ElemSet meet = E;
    for (ElemSet y : above) meet &= y;
    bool irr = meet != f.elements;
    for (size_t a = 0; a < above.size() && irr; ++a)
      for (size_t b = a + 1; b < above.size(); ++b) {
        if (subset_of(above[a], above[b]) || subset_of(above[b], above[a])) continue;
        if ((above[a] & above[b]) == f.elements) {
          irr = false;
          break;
        }
      }
    f.irreducible = irr;
    f.connected = f.elements != 0 && is_connected(restriction(m, f.elements));
    bool mod = true;
    for (size_t j = 0; j < flats_.size() && mod; ++j) {
      ElemSet y = flats_[j].elements;
      int lhs = f.rank + flats_[j].rank;
      int rhs = m.rank(f.elements | y) + m.rank(f.elements & y);
      if (lhs != rhs) mod = false;
    }
    f.modular = mod;
  }
}

std::vector<ElemSet> FlatLattice::flats_of_rank(int k) const {
  std::vector<ElemSet> out;
  if (k < 0 || k > rank()) return out;
  for (size_t i : level(k)) out.push_back(flats_[i].elements);
  return out;
}

std::optional<size_t> FlatLattice::index_of(ElemSet x) const {
  auto it = index_.find(x);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FlatLattice::irreducible(size_t i, IrreducibleMode mode) const {
  const Flat& f = flats_[i];
  switch (mode) {
    case IrreducibleMode::Strict: return f.irreducible;
    case IrreducibleMode::Lenient: return f.rank == 2 || f.irreducible;
    case IrreducibleMode::Connected: return f.connected;
  }
  return false;
}

long FlatLattice::mobius(ElemSet x) const {
  auto i = index_of(x);
  if (!i) throw InputError(format_set(x) + " is not a flat");
  return flats_[*i].mobius;
}

std::optional<std::vector<ElemSet>> FlatLattice::supersolvable_chain() const {
  std::vector<ElemSet> chain;
  const int top = rank();
  std::function<bool(size_t)> dfs = [&](size_t i) {
    chain.push_back(flats_[i].elements);
    if (flats_[i].rank == top) return true;
    for (size_t u : up_[i])
      if (flats_[u].modular && dfs(u)) return true;
    chain.pop_back();
    return false;
  };
  if (flats_.empty() || !dfs(0)) return std::nullopt;
  return chain;
}

}  // namespace mres

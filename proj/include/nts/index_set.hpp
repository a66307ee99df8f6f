#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <vector>

#include "nts/rng.hpp"

namespace nts {

// Dense set of integers in [0, capacity): O(1) membership, insert, erase and
// uniform random sampling.  Erase swaps the last member into the hole, so
// iteration order is unspecified.
class IndexSet {
public:
  IndexSet() = default;
  explicit IndexSet(uint32_t capacity) : pos_(capacity, absent) {}

  uint32_t size() const { return (uint32_t)items_.size(); }
  bool empty() const { return items_.empty(); }
  bool contains(uint32_t x) const { return pos_[x] != absent; }
  std::span<const uint32_t> items() const { return items_; }

  void insert(uint32_t x) {
    if (pos_[x] != absent)
      return;
    pos_[x] = (uint32_t)items_.size();
    items_.push_back(x);
  }

  void erase(uint32_t x) {
    const uint32_t p = pos_[x];
    if (p == absent)
      return;
    const uint32_t last = items_.back();
    items_[p] = last;
    pos_[last] = p;
    items_.pop_back();
    pos_[x] = absent;
  }

  uint32_t sample(Rng &rng) const {
    assert(!items_.empty());
    return items_[rng.next_below(items_.size())];
  }

  void clear() {
    for (uint32_t x : items_)
      pos_[x] = absent;
    items_.clear();
  }

private:
  static constexpr uint32_t absent = UINT32_MAX;

  std::vector<uint32_t> items_;
  std::vector<uint32_t> pos_;
};

} // namespace nts

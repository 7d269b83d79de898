#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "scorectl/errors.hpp"

namespace scorectl {

// Kuhn-style augmenting paths, startable from either side. An augmenting
// path only ever adds matched vertices, so covering one side first and then
// growing from the other keeps the first cover intact.
class BipartiteMatcher {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  BipartiteMatcher(std::size_t left, std::size_t right)
      : adj_left_(left), adj_right_(right), match_left_(left, npos), match_right_(right, npos) {}

  void add_edge(std::size_t l, std::size_t r) {
    adj_left_.at(l).push_back(r);
    adj_right_.at(r).push_back(l);
  }

  // Neighbour lists are visited in ascending order.
  void finalize() {
    for (auto& a : adj_left_) std::sort(a.begin(), a.end());
    for (auto& a : adj_right_) std::sort(a.begin(), a.end());
  }

  bool augment_from_left(std::size_t l) {
    if (match_left_[l] != npos) return true;
    std::vector<bool> seen(adj_right_.size(), false);
    return grow_left(l, seen);
  }

  bool augment_from_right(std::size_t r) {
    if (match_right_[r] != npos) return true;
    std::vector<bool> seen(adj_left_.size(), false);
    return grow_right(r, seen);
  }

  std::size_t match_of_left(std::size_t l) const { return match_left_.at(l); }
  std::size_t match_of_right(std::size_t r) const { return match_right_.at(r); }

 private:
  bool grow_left(std::size_t l, std::vector<bool>& seen_r) {
    for (auto r : adj_left_[l]) {
      if (seen_r[r]) continue;
      seen_r[r] = true;
      if (match_right_[r] == npos || grow_left(match_right_[r], seen_r)) {
        match_left_[l] = r;
        match_right_[r] = l;
        return true;
      }
    }
    return false;
  }

  bool grow_right(std::size_t r, std::vector<bool>& seen_l) {
    for (auto l : adj_right_[r]) {
      if (seen_l[l]) continue;
      seen_l[l] = true;
      if (match_left_[l] == npos || grow_right(match_left_[l], seen_l)) {
        match_right_[r] = l;
        match_left_[l] = r;
        return true;
      }
    }
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_left_, adj_right_;
  std::vector<std::size_t> match_left_, match_right_;
};

// Distinct representatives for `sets` (elements drawn from 0..universe-1)
// such that every element of `must_cover` is used. Returns nullopt if none.
inline std::optional<std::vector<std::size_t>> distinct_representatives(
    const std::vector<std::vector<std::size_t>>& sets, std::size_t universe,
    std::span<const std::size_t> must_cover = {}) {
  BipartiteMatcher bm(sets.size(), universe);
  for (std::size_t s = 0; s < sets.size(); ++s)
    for (auto e : sets[s]) {
      if (e >= universe) throw DimensionError("set element outside the universe");
      bm.add_edge(s, e);
    }
  bm.finalize();
  for (auto e : must_cover)
    if (!bm.augment_from_right(e)) return std::nullopt;
  for (std::size_t s = 0; s < sets.size(); ++s)
    if (!bm.augment_from_left(s)) return std::nullopt;
  std::vector<std::size_t> rep(sets.size());
  for (std::size_t s = 0; s < sets.size(); ++s) rep[s] = bm.match_of_left(s);
  return rep;
}

}  // namespace scorectl

#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <vector>

#include "scorectl.hpp"

namespace scorectl::test {

inline ScoringVector sv(std::initializer_list<long long> c) { return ScoringVector::of(c); }

inline Vote vote(const Election& e, std::initializer_list<const char*> names) {
  std::vector<CandidateId> r;
  for (auto n : names) r.push_back(e.candidate(n));
  return Vote(std::move(r));
}

// Vote over `e` ending in `tail`, others in roster order before it.
inline Vote ending(const Election& e, std::initializer_list<const char*> tail) {
  std::vector<bool> placed(e.num_candidates(), false);
  std::vector<CandidateId> back;
  for (auto n : tail) {
    back.push_back(e.candidate(n));
    placed[back.back().value] = true;
  }
  std::vector<CandidateId> r;
  for (std::size_t c = 0; c < e.num_candidates(); ++c)
    if (!placed[c]) r.emplace_back(c);
  r.insert(r.end(), back.begin(), back.end());
  return Vote(std::move(r));
}

inline Vote random_vote(std::mt19937_64& rng, std::size_t m) {
  std::vector<CandidateId> r;
  for (std::size_t i = 0; i < m; ++i) r.emplace_back(i);
  std::shuffle(r.begin(), r.end(), rng);
  return Vote(std::move(r));
}

inline Election random_election(std::mt19937_64& rng, std::size_t m, std::size_t n) {
  Election e(m);
  for (std::size_t i = 0; i < n; ++i) e.add(random_vote(rng, m));
  return e;
}

inline ScoringVector random_vector(std::mt19937_64& rng, std::size_t m, long long lo, long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  std::vector<long long> v(m);
  for (auto& x : v) x = d(rng);
  std::sort(v.begin(), v.end(), std::greater<>());
  std::vector<Integer> c(v.begin(), v.end());
  return ScoringVector(std::move(c));
}

// Rule (0,...,0,-1,-3) over p, a..f with seven voters.
inline Election bribery_example_one() {
  Election e({"p", "a", "b", "c", "d", "e", "f"}, {});
  e.add(ending(e, {"p", "a"}));
  e.add(ending(e, {"p", "b"}));
  e.add(ending(e, {"p", "c"}));
  e.add(ending(e, {"e", "f"}), 2);
  e.add(ending(e, {"f", "e"}), 2);
  return e;
}

// Rule (0,...,0,-2,-3) over p, a..d with eleven voters.
inline Election bribery_example_two() {
  Election e({"p", "a", "b", "c", "d"}, {});
  e.add(ending(e, {"a", "p"}));
  e.add(ending(e, {"b", "p"}));
  e.add(ending(e, {"c", "p"}));
  e.add(ending(e, {"p", "d"}));
  e.add(ending(e, {"b", "d"}));
  e.add(ending(e, {"d", "b"}));
  e.add(ending(e, {"c", "d"}));
  e.add(ending(e, {"d", "c"}));
  e.add(ending(e, {"a", "d"}), 2);
  e.add(ending(e, {"d", "a"}));
  return e;
}

// Surpluses (4,3,3) for c1..c3 under (0,0,0,0,-2,-3), two dummies.
inline Election manipulation_example() {
  Election e({"p", "c1", "c2", "c3", "d1", "d2"}, {});
  e.add(ending(e, {"d1", "p"}));
  e.add(ending(e, {"p", "d2"}), 2);
  e.add(ending(e, {"d1", "c1"}));
  e.add(ending(e, {"c2", "d1"}));
  e.add(ending(e, {"c2", "d2"}));
  e.add(ending(e, {"c3", "d1"}));
  e.add(ending(e, {"c3", "d2"}));
  return e;
}

// Indices of voters whose vote satisfies pred.
template <class Pred>
std::vector<std::size_t> voters_where(const Election& e, Pred pred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < e.num_votes(); ++i)
    if (pred(e.voter(i))) out.push_back(i);
  return out;
}

}  // namespace scorectl::test

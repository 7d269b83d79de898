#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scorectl/errors.hpp"
#include "scorectl/integer.hpp"

namespace scorectl {

struct CandidateId {
  std::size_t value = 0;
  constexpr CandidateId() = default;
  constexpr explicit CandidateId(std::size_t v) : value(v) {}
  friend constexpr auto operator<=>(CandidateId, CandidateId) = default;
};

// A strict ranking of all candidates, best first.
class Vote {
 public:
  Vote() = default;
  explicit Vote(std::vector<CandidateId> ranking) : ranking_(std::move(ranking)) {
    std::vector<bool> seen(ranking_.size(), false);
    for (auto c : ranking_) {
      if (c.value >= ranking_.size() || seen[c.value])
        throw DimensionError("vote is not a permutation of 0.." + std::to_string(ranking_.size()));
      seen[c.value] = true;
    }
  }

  static Vote identity(std::size_t m) {
    std::vector<CandidateId> r;
    r.reserve(m);
    for (std::size_t i = 0; i < m; ++i) r.emplace_back(i);
    return Vote(std::move(r));
  }

  static Vote from_indices(std::initializer_list<std::size_t> ids) {
    std::vector<CandidateId> r;
    for (auto i : ids) r.emplace_back(i);
    return Vote(std::move(r));
  }

  std::size_t size() const noexcept { return ranking_.size(); }
  CandidateId at(std::size_t pos) const { return ranking_.at(pos); }
  CandidateId last() const { return ranking_.back(); }
  std::span<const CandidateId> ranking() const noexcept { return ranking_; }

  std::size_t position_of(CandidateId c) const {
    for (std::size_t i = 0; i < ranking_.size(); ++i)
      if (ranking_[i] == c) return i;
    throw InvalidCandidate("candidate " + std::to_string(c.value) + " not in vote");
  }

  Vote reversed() const {
    std::vector<CandidateId> r(ranking_.rbegin(), ranking_.rend());
    return Vote(std::move(r));
  }

  friend auto operator<=>(const Vote&, const Vote&) = default;
  friend bool operator==(const Vote&, const Vote&) = default;

 private:
  std::vector<CandidateId> ranking_;
};

struct VoteGroup {
  Vote vote;
  std::size_t count = 1;
};

// Candidates plus a multiset of votes. Equal votes are merged into one group;
// group order is first-appearance order. A voter index is a position in the
// expanded list (groups in order, copies consecutive).
class Election {
 public:
  Election() = default;
  explicit Election(std::size_t num_candidates) : names_(default_names(num_candidates)) {}

  Election(std::size_t num_candidates, const std::vector<VoteGroup>& groups)
      : Election(default_names(num_candidates), groups) {}

  Election(std::vector<std::string> names, const std::vector<VoteGroup>& groups)
      : names_(std::move(names)) {
    check_names();
    for (const auto& g : groups) add(g.vote, g.count);
  }

  static Election from_votes(std::size_t m, const std::vector<Vote>& votes) {
    Election e(m);
    for (const auto& v : votes) e.add(v, 1);
    return e;
  }

  std::size_t num_candidates() const noexcept { return names_.size(); }
  std::size_t num_votes() const noexcept { return total_; }
  const std::vector<VoteGroup>& groups() const noexcept { return groups_; }
  const std::vector<std::string>& names() const noexcept { return names_; }

  const std::string& name(CandidateId c) const {
    check_candidate(c);
    return names_[c.value];
  }

  CandidateId candidate(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return CandidateId(i);
    throw InvalidCandidate("unknown candidate '" + std::string(name) + "'");
  }

  void check_candidate(CandidateId c) const {
    if (c.value >= names_.size())
      throw InvalidCandidate("candidate id " + std::to_string(c.value) + " out of range");
  }

  std::size_t group_of_voter(std::size_t index) const {
    if (index >= total_) throw MissingVote("voter index " + std::to_string(index) + " out of range");
    std::size_t acc = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      acc += groups_[g].count;
      if (index < acc) return g;
    }
    throw InternalError("voter index bookkeeping");
  }

  const Vote& voter(std::size_t index) const { return groups_[group_of_voter(index)].vote; }

  // First expanded index belonging to group g.
  std::size_t first_voter_of_group(std::size_t g) const {
    std::size_t acc = 0;
    for (std::size_t i = 0; i < g; ++i) acc += groups_[i].count;
    return acc;
  }

  std::vector<Vote> expanded() const {
    std::vector<Vote> out;
    out.reserve(total_);
    for (const auto& g : groups_)
      for (std::size_t i = 0; i < g.count; ++i) out.push_back(g.vote);
    return out;
  }

  void add(const Vote& v, std::size_t count = 1) {
    if (v.size() != names_.size())
      throw DimensionError("vote has " + std::to_string(v.size()) + " entries, election has " +
                           std::to_string(names_.size()) + " candidates");
    if (count == 0) return;
    auto it = index_.find(v);
    if (it == index_.end()) {
      index_.emplace(v, groups_.size());
      groups_.push_back({v, count});
    } else {
      groups_[it->second].count += count;
    }
    total_ += count;
  }

  void remove(const Vote& v, std::size_t count = 1) {
    auto it = index_.find(v);
    if (it == index_.end() || groups_[it->second].count < count)
      throw MissingVote("vote to delete is not present often enough");
    groups_[it->second].count -= count;
    total_ -= count;
    if (groups_[it->second].count == 0) {
      groups_.erase(groups_.begin() + static_cast<std::ptrdiff_t>(it->second));
      index_.clear();
      for (std::size_t g = 0; g < groups_.size(); ++g) index_.emplace(groups_[g].vote, g);
    }
  }

  std::size_t count_of(const Vote& v) const {
    auto it = index_.find(v);
    return it == index_.end() ? 0 : groups_[it->second].count;
  }

 private:
  static std::vector<std::string> default_names(std::size_t m) {
    std::vector<std::string> n;
    for (std::size_t i = 0; i < m; ++i) n.push_back("c" + std::to_string(i));
    return n;
  }

  void check_names() const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      for (std::size_t j = i + 1; j < names_.size(); ++j)
        if (names_[i] == names_[j]) throw DimensionError("duplicate candidate name '" + names_[i] + "'");
  }

  std::vector<std::string> names_;
  std::vector<VoteGroup> groups_;
  std::map<Vote, std::size_t> index_;
  std::size_t total_ = 0;
};

// Weakly decreasing positional coefficients, one per rank position.
class ScoringVector {
 public:
  ScoringVector() = default;
  explicit ScoringVector(std::vector<Integer> coefficients) : coef_(std::move(coefficients)) {
    for (std::size_t i = 1; i < coef_.size(); ++i)
      if (coef_[i] > coef_[i - 1]) throw DomainError("scoring vector is not weakly decreasing");
  }

  static ScoringVector of(std::initializer_list<long long> values) {
    std::vector<Integer> c;
    for (auto v : values) c.emplace_back(v);
    return ScoringVector(std::move(c));
  }

  static ScoringVector from_rationals(std::span<const Rational> values) {
    return ScoringVector(clear_denominators(values));
  }

  std::size_t size() const noexcept { return coef_.size(); }
  const Integer& operator[](std::size_t i) const { return coef_.at(i); }
  std::span<const Integer> coefficients() const noexcept { return coef_; }

  std::size_t distinct_count() const {
    std::size_t d = coef_.empty() ? 0 : 1;
    for (std::size_t i = 1; i < coef_.size(); ++i)
      if (coef_[i] != coef_[i - 1]) ++d;
    return d;
  }

  // Negate and reverse.
  ScoringVector dual() const {
    std::vector<Integer> c(coef_.rbegin(), coef_.rend());
    for (auto& x : c) x = -x;
    return ScoringVector(std::move(c));
  }

  friend bool operator==(const ScoringVector&, const ScoringVector&) = default;

 private:
  std::vector<Integer> coef_;
};

struct ScoreTable {
  std::vector<Integer> scores;
  const Integer& operator[](CandidateId c) const { return scores.at(c.value); }
  Integer& operator[](CandidateId c) { return scores.at(c.value); }
  std::size_t size() const noexcept { return scores.size(); }
};

inline void add_vote_scores(ScoreTable& t, const Vote& v, const ScoringVector& g, const Integer& mult) {
  for (std::size_t pos = 0; pos < v.size(); ++pos) t.scores[v.at(pos).value] += g[pos] * mult;
}

inline ScoreTable score_vote(const Vote& v, const ScoringVector& g) {
  if (v.size() != g.size()) throw DimensionError("vote and scoring vector lengths differ");
  ScoreTable t{std::vector<Integer>(v.size())};
  add_vote_scores(t, v, g, 1);
  return t;
}

inline ScoreTable score_all(const Election& e, const ScoringVector& g) {
  if (e.num_candidates() != g.size())
    throw DimensionError("scoring vector has " + std::to_string(g.size()) + " entries, election has " +
                         std::to_string(e.num_candidates()) + " candidates");
  ScoreTable t{std::vector<Integer>(e.num_candidates())};
  for (const auto& grp : e.groups()) add_vote_scores(t, grp.vote, g, Integer(grp.count));
  return t;
}

inline std::vector<CandidateId> winners(const ScoreTable& t) {
  std::vector<CandidateId> w;
  if (t.scores.empty()) return w;
  const Integer& best = *std::max_element(t.scores.begin(), t.scores.end());
  for (std::size_t i = 0; i < t.scores.size(); ++i)
    if (t.scores[i] == best) w.emplace_back(i);
  return w;
}

inline bool is_winner(const ScoreTable& t, CandidateId p) {
  for (const auto& s : t.scores)
    if (s > t[p]) return false;
  return true;
}

// surplus[c] = score(c) - score(p); p's own entry is zero.
struct SurplusTable {
  CandidateId preferred;
  std::vector<Integer> surplus;
};

inline SurplusTable surplus(const ScoreTable& t, CandidateId p) {
  if (p.value >= t.size()) throw InvalidCandidate("preferred candidate out of range");
  SurplusTable s{p, {}};
  s.surplus.reserve(t.size());
  for (const auto& x : t.scores) s.surplus.push_back(x - t[p]);
  return s;
}

inline Election add_votes(const Election& e, const std::vector<Vote>& votes) {
  Election out = e;
  for (const auto& v : votes) out.add(v);
  return out;
}

inline Election delete_votes(const Election& e, const std::vector<Vote>& votes) {
  Election out = e;
  for (const auto& v : votes) out.remove(v);
  return out;
}

// Voter indices refer to e, so they are resolved before anything is removed.
inline std::vector<Vote> votes_of_voters(const Election& e, std::span<const std::size_t> voters) {
  std::vector<std::size_t> sorted(voters.begin(), voters.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw MissingVote("voter index listed twice");
  std::vector<Vote> out;
  for (auto i : sorted) out.push_back(e.voter(i));
  return out;
}

inline Election delete_voters(const Election& e, std::span<const std::size_t> voters) {
  return delete_votes(e, votes_of_voters(e, voters));
}

}  // namespace scorectl

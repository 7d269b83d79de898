#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "scorectl/election.hpp"
#include "scorectl/matching.hpp"

namespace scorectl {

inline constexpr std::size_t kDefaultCoefficientCap = 6;
inline constexpr std::size_t kDefaultDpStateCap = 20'000'000;

// The vector shifted so its top value is 0: blocks 0 > -penalties[0] > ...
// p always takes one of the zero positions, leaving zero_slots for others.
struct CoefficientProfile {
  std::vector<Integer> penalties;
  std::vector<std::size_t> slots;
  std::size_t zero_slots = 0;

  static CoefficientProfile from_vector(const ScoringVector& g) {
    if (g.size() == 0) throw DimensionError("empty scoring vector");
    CoefficientProfile p;
    const Integer& top = g[0];
    for (std::size_t i = 0; i < g.size(); ++i) {
      Integer pen = top - g[i];
      if (pen == 0) {
        ++p.zero_slots;
      } else if (!p.penalties.empty() && p.penalties.back() == pen) {
        ++p.slots.back();
      } else {
        p.penalties.push_back(pen);
        p.slots.push_back(1);
      }
    }
    --p.zero_slots;
    return p;
  }

  std::size_t distinct() const noexcept { return penalties.size() + 1; }
  std::size_t num_candidates() const {
    return 1 + zero_slots + std::accumulate(slots.begin(), slots.end(), std::size_t{0});
  }
};

struct DPQuery {
  std::size_t k = 0;
  std::vector<std::size_t> budgets;   // per penalty block: slots * k
  std::vector<Integer> surpluses;     // one per non-preferred candidate

  static DPQuery for_profile(const CoefficientProfile& prof, std::size_t k, std::vector<Integer> surpluses) {
    DPQuery q{k, {}, std::move(surpluses)};
    for (auto s : prof.slots) q.budgets.push_back(s * k);
    return q;
  }
};

// counts[i][j]: how many manipulators put candidate i into penalty block j.
using Assignment = std::vector<std::vector<std::size_t>>;

namespace detail {

inline void enumerate_choices(std::size_t j, std::size_t left, const std::vector<std::size_t>& budgets,
                              std::vector<std::size_t>& cur, std::vector<std::vector<std::size_t>>& out,
                              const std::function<bool(const std::vector<std::size_t>&)>& accept) {
  if (j == budgets.size()) {
    if (accept(cur)) out.push_back(cur);
    return;
  }
  for (std::size_t x = 0; x <= std::min(left, budgets[j]); ++x) {
    cur[j] = x;
    enumerate_choices(j + 1, left - x, budgets, cur, out, accept);
  }
  cur[j] = 0;
}

}  // namespace detail

// Returns one assignment meeting all budgets exactly, or nullopt.
// Candidates with non-positive surplus need nothing, so they are kept out of
// the table and only have to soak up what is left (at most k each).
inline std::optional<Assignment> dp_witness(const DPQuery& q, const CoefficientProfile& prof,
                                            std::size_t state_cap = kDefaultDpStateCap) {
  const std::size_t r = prof.penalties.size();
  if (q.budgets.size() != r) throw DimensionError("budget count differs from penalty block count");
  const std::size_t n = q.surpluses.size();

  std::vector<std::size_t> pos, zero;
  for (std::size_t i = 0; i < n; ++i) (q.surpluses[i] > 0 ? pos : zero).push_back(i);

  std::vector<std::size_t> radix(r);
  std::size_t states = 1;
  for (std::size_t j = 0; j < r; ++j) {
    radix[j] = states;
    states *= q.budgets[j] + 1;
    if (states > state_cap) throw UnsupportedRule("manipulation table would exceed the state cap");
  }

  // Choices per positive candidate.
  std::vector<std::vector<std::vector<std::size_t>>> choices(pos.size());
  for (std::size_t t = 0; t < pos.size(); ++t) {
    const Integer& s = q.surpluses[pos[t]];
    std::vector<std::size_t> cur(r, 0);
    detail::enumerate_choices(0, q.k, q.budgets, cur, choices[t], [&](const std::vector<std::size_t>& x) {
      Integer loss = 0;
      for (std::size_t j = 0; j < r; ++j) loss += prof.penalties[j] * x[j];
      return loss >= s;
    });
    if (choices[t].empty()) return std::nullopt;
  }

  // layer[t][state] = index of the choice that reached it (or -1).
  constexpr std::int32_t kUnreached = -1;
  std::vector<std::vector<std::int32_t>> layer(pos.size() + 1, std::vector<std::int32_t>(states, kUnreached));
  layer[0][0] = 0;
  auto decode = [&](std::size_t st, std::size_t j) { return (st / radix[j]) % (q.budgets[j] + 1); };
  for (std::size_t t = 0; t < pos.size(); ++t) {
    bool any = false;
    for (std::size_t st = 0; st < states; ++st) {
      if (layer[t][st] == kUnreached) continue;
      for (std::size_t c = 0; c < choices[t].size(); ++c) {
        const auto& x = choices[t][c];
        std::size_t nst = st;
        bool ok = true;
        for (std::size_t j = 0; j < r && ok; ++j) {
          if (decode(st, j) + x[j] > q.budgets[j]) ok = false;
          nst += x[j] * radix[j];
        }
        if (!ok || layer[t + 1][nst] != kUnreached) continue;
        layer[t + 1][nst] = static_cast<std::int32_t>(c);
        any = true;
      }
    }
    if (!any) return std::nullopt;
  }

  const std::size_t cap_free = zero.size() * q.k;
  std::optional<std::size_t> end;
  for (std::size_t st = 0; st < states && !end; ++st) {
    if (layer[pos.size()][st] == kUnreached) continue;
    std::size_t left = 0;
    for (std::size_t j = 0; j < r; ++j) left += q.budgets[j] - decode(st, j);
    if (left <= cap_free) end = st;
  }
  if (!end) return std::nullopt;

  Assignment a(n, std::vector<std::size_t>(r, 0));
  std::size_t st = *end;
  for (std::size_t t = pos.size(); t-- > 0;) {
    const auto& x = choices[t][static_cast<std::size_t>(layer[t + 1][st])];
    a[pos[t]] = x;
    for (std::size_t j = 0; j < r; ++j) st -= x[j] * radix[j];
  }
  std::vector<std::size_t> rest(r);
  for (std::size_t j = 0; j < r; ++j) rest[j] = q.budgets[j] - decode(*end, j);
  std::size_t j = 0;
  for (auto i : zero) {
    std::size_t room = q.k;
    while (room > 0 && j < r) {
      std::size_t take = std::min(room, rest[j]);
      a[i][j] += take;
      rest[j] -= take;
      room -= take;
      if (rest[j] == 0) ++j;
    }
  }
  return a;
}

inline bool dp_feasible(const DPQuery& q, const CoefficientProfile& prof,
                        std::size_t state_cap = kDefaultDpStateCap) {
  return dp_witness(q, prof, state_cap).has_value();
}

// Turn an assignment into k concrete votes. `others[i]` is the candidate
// behind surplus i. Each round picks distinct representatives, forcing in
// every candidate whose remaining count equals the rounds left.
inline std::vector<Vote> votes_from_assignment(Assignment a, const CoefficientProfile& prof, std::size_t k,
                                               CandidateId preferred, std::span<const CandidateId> others) {
  const std::size_t n = a.size();
  const std::size_t r = prof.penalties.size();
  if (others.size() != n || prof.num_candidates() != n + 1)
    throw DimensionError("profile length does not match the number of candidates");
  std::vector<Vote> votes;
  for (std::size_t rounds = k; rounds > 0; --rounds) {
    std::vector<std::vector<std::size_t>> sets;
    std::vector<std::size_t> block_of;
    for (std::size_t j = 0; j < r; ++j) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i)
        if (a[i][j] > 0) members.push_back(i);
      for (std::size_t c = 0; c < prof.slots[j]; ++c) {
        sets.push_back(members);
        block_of.push_back(j);
      }
    }
    std::vector<std::size_t> tight;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t tot = std::accumulate(a[i].begin(), a[i].end(), std::size_t{0});
      if (tot > rounds) throw InternalError("assignment exceeds the number of manipulators");
      if (tot == rounds) tight.push_back(i);
    }
    auto rep = distinct_representatives(sets, n, tight);
    if (!rep) throw InternalError("no distinct representatives for a valid assignment");

    std::vector<bool> used(n, false);
    std::vector<std::vector<std::size_t>> blocks(r);
    for (std::size_t s = 0; s < sets.size(); ++s) {
      std::size_t i = (*rep)[s];
      used[i] = true;
      --a[i][block_of[s]];
      blocks[block_of[s]].push_back(i);
    }
    std::vector<CandidateId> ranking{preferred};
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i]) ranking.push_back(others[i]);
    for (auto& b : blocks) {
      std::sort(b.begin(), b.end());
      for (auto i : b) ranking.push_back(others[i]);
    }
    votes.emplace_back(std::move(ranking));
  }
  return votes;
}

inline std::optional<std::vector<Vote>> reconstruct(const DPQuery& q, const CoefficientProfile& prof,
                                                   CandidateId preferred, std::span<const CandidateId> others) {
  auto a = dp_witness(q, prof);
  if (!a) return std::nullopt;
  return votes_from_assignment(std::move(*a), prof, q.k, preferred, others);
}

// Candidate 0 is preferred, surplus i belongs to candidate i + 1.
inline std::optional<std::vector<Vote>> reconstruct(const DPQuery& q, const CoefficientProfile& prof) {
  std::vector<CandidateId> others;
  for (std::size_t i = 0; i < q.surpluses.size(); ++i) others.emplace_back(i + 1);
  return reconstruct(q, prof, CandidateId(0), others);
}

struct ManipulationResult {
  bool feasible = false;
  std::vector<Vote> votes;
};

inline CoefficientProfile checked_profile(const ScoringVector& g, std::size_t cap) {
  auto prof = CoefficientProfile::from_vector(g);
  if (prof.distinct() > cap)
    throw UnsupportedRule("rule has " + std::to_string(prof.distinct()) +
                          " distinct coefficients, the manipulation solver is capped at " + std::to_string(cap));
  return prof;
}

// Surplus-level entry point: surpluses[i] is candidate i+1 versus candidate 0.
inline ManipulationResult solve_manipulation_surplus(const std::vector<Integer>& surpluses, const ScoringVector& g,
                                                     std::size_t k, std::size_t cap = kDefaultCoefficientCap) {
  if (g.size() != surpluses.size() + 1) throw DimensionError("scoring vector length must be candidates + 1");
  auto prof = checked_profile(g, cap);
  auto q = DPQuery::for_profile(prof, k, surpluses);
  auto votes = reconstruct(q, prof);
  if (!votes) return {};
  return {true, std::move(*votes)};
}

inline ManipulationResult solve_manipulation(const Election& e, const ScoringVector& g, CandidateId p, std::size_t k,
                                             std::size_t cap = kDefaultCoefficientCap) {
  e.check_candidate(p);
  if (g.size() != e.num_candidates()) throw DimensionError("scoring vector length differs from candidate count");
  auto prof = checked_profile(g, cap);
  auto scores = score_all(e, g);
  std::vector<CandidateId> others;
  std::vector<Integer> sur;
  for (std::size_t c = 0; c < e.num_candidates(); ++c) {
    if (c == p.value) continue;
    others.emplace_back(c);
    sur.push_back(scores.scores[c] - scores[p]);
  }
  auto q = DPQuery::for_profile(prof, k, std::move(sur));
  auto votes = reconstruct(q, prof, p, others);
  if (!votes) return {};
  if (!is_winner(score_all(add_votes(e, *votes), g), p))
    throw InternalError("manipulation certificate does not make the preferred candidate win");
  return {true, std::move(*votes)};
}

}  // namespace scorectl

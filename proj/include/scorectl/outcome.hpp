#pragma once

#include <string>
#include <vector>

#include "scorectl/election.hpp"

namespace scorectl {

// Election, rule, preferred candidate and action budget. Used for both
// control by deleting voters and bribery.
struct Instance {
  Election election;
  ScoringVector rule;
  CandidateId preferred;
  std::size_t budget = 0;

  void validate() const {
    election.check_candidate(preferred);
    if (rule.size() != election.num_candidates())
      throw DimensionError("scoring vector length differs from candidate count");
  }
};

using CcdvInstance = Instance;
using BriberyInstance = Instance;

// Feasibility plus the certificate that proves it.
//   manipulation: votes are the added manipulator votes
//   ccdv:         deleted holds voter indices
//   bribery:      bribed[i] is replaced by votes[i]
struct SolverOutcome {
  bool feasible = false;
  std::vector<std::size_t> deleted;
  std::vector<std::size_t> bribed;
  std::vector<Vote> votes;
  std::string solver;
  std::vector<std::string> notes;
};

inline bool verify_manipulation(const Election& e, const ScoringVector& g, CandidateId p, std::size_t k,
                                const SolverOutcome& o) {
  if (!o.feasible) return true;
  if (o.votes.size() != k) return false;
  try {
    return is_winner(score_all(add_votes(e, o.votes), g), p);
  } catch (const Error&) {
    return false;
  }
}

inline bool verify_ccdv(const Instance& in, const SolverOutcome& o) {
  if (!o.feasible) return true;
  if (o.deleted.size() > in.budget) return false;
  try {
    return is_winner(score_all(delete_voters(in.election, o.deleted), in.rule), in.preferred);
  } catch (const Error&) {
    return false;
  }
}

inline Election apply_bribery(const Election& e, const std::vector<std::size_t>& bribed,
                              const std::vector<Vote>& replacements) {
  if (bribed.size() != replacements.size()) throw DimensionError("one replacement vote per bribed voter");
  return add_votes(delete_voters(e, bribed), replacements);
}

inline bool verify_bribery(const Instance& in, const SolverOutcome& o) {
  if (!o.feasible) return true;
  if (o.bribed.size() > in.budget) return false;
  try {
    return is_winner(score_all(apply_bribery(in.election, o.bribed, o.votes), in.rule), in.preferred);
  } catch (const Error&) {
    return false;
  }
}

// Candidates in id order, p first: the filler for positions nobody cares about.
inline std::vector<CandidateId> others_in_order(std::size_t m, CandidateId p) {
  std::vector<CandidateId> out;
  for (std::size_t c = 0; c < m; ++c)
    if (c != p.value) out.emplace_back(c);
  return out;
}

// p first, then `tail` occupying the last positions in the given order, and
// everyone else in between by id.
inline Vote vote_with_tail(std::size_t m, CandidateId p, const std::vector<CandidateId>& tail) {
  std::vector<bool> placed(m, false);
  placed[p.value] = true;
  for (auto c : tail) placed[c.value] = true;
  std::vector<CandidateId> r{p};
  for (std::size_t c = 0; c < m; ++c)
    if (!placed[c]) r.emplace_back(c);
  r.insert(r.end(), tail.begin(), tail.end());
  return Vote(std::move(r));
}

}  // namespace scorectl

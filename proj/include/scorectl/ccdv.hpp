#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "scorectl/bribery.hpp"
#include "scorectl/dispatch_notes.hpp"
#include "scorectl/oracles.hpp"
#include "scorectl/outcome.hpp"
#include "scorectl/rules.hpp"

namespace scorectl {

// Plurality: keep deleting a vote for the current strongest rival.
inline SolverOutcome solve_ccdv_plurality(const Instance& in) {
  in.validate();
  if (!is_plurality(in.rule)) throw UnsupportedRule("rule is not equivalent to plurality");
  const auto& e = in.election;
  const std::size_t m = e.num_candidates();
  const std::size_t p = in.preferred.value;
  std::vector<std::int64_t> tops(m, 0);
  std::vector<std::vector<std::size_t>> voters_of(m);
  for (std::size_t i = 0, idx = 0; i < e.groups().size(); ++i)
    for (std::size_t c = 0; c < e.groups()[i].count; ++c, ++idx) {
      auto t = e.groups()[i].vote.at(0).value;
      ++tops[t];
      voters_of[t].push_back(idx);
    }
  std::vector<std::size_t> next(m, 0);
  SolverOutcome out;
  out.solver = "ccdv:plurality";
  for (std::size_t step = 0; step < in.budget; ++step) {
    std::size_t best = m;
    for (std::size_t c = 0; c < m; ++c)
      if (c != p && (best == m || tops[c] > tops[best])) best = c;
    if (best == m || tops[best] <= tops[p]) break;
    out.deleted.push_back(voters_of[best][next[best]++]);
    --tops[best];
  }
  out.feasible = detail::fast_winner(tops, p);
  if (!out.feasible) {
    out.deleted.clear();
    return out;
  }
  std::sort(out.deleted.begin(), out.deleted.end());
  if (!verify_ccdv(in, out)) throw InternalError("plurality deletion certificate failed verification");
  return out;
}

// (0,...,0,-beta,-alpha): only voters ranking p in the last two positions are
// worth deleting. Fix how many of each kind go, then a table over candidates
// decides how to spread them.
inline SolverOutcome solve_ccdv_last_two(const Instance& in) {
  in.validate();
  auto lt = match_last_two(in.rule);
  if (!lt) throw UnsupportedRule("rule is not of the form (0,...,0,-beta,-alpha)");
  const Integer beta = lt->beta, alpha = lt->alpha;
  const auto& e = in.election;
  const std::size_t m = e.num_candidates();
  const CandidateId p = in.preferred;
  const std::size_t k = std::min(in.budget, e.num_votes());
  SolverOutcome out;
  out.solver = "ccdv:last-two";

  auto vp = partition_last_two(e, p);
  ScoreTable sc = score_all(e, in.rule);
  std::vector<CandidateId> others = others_in_order(m, p);
  const std::size_t no = others.size();
  std::vector<std::vector<std::size_t>> v1_of(m), v2_of(m);
  for (auto i : vp.v1) v1_of[e.voter(i).at(m - 2).value].push_back(i);
  for (auto i : vp.v2) v2_of[e.voter(i).last().value].push_back(i);

  for (std::size_t d1 = 0; d1 <= std::min(k, vp.v1.size()); ++d1)
    for (std::size_t d2 = 0; d2 <= std::min(k - d1, vp.v2.size()); ++d2) {
      const Integer gain = alpha * d1 + beta * d2;
      const std::size_t dz = d1 + 1, dw = d2 + 1;
      std::vector<std::vector<int>> layer(no + 1, std::vector<int>(dz * dw, -1));
      std::vector<std::vector<std::pair<std::size_t, std::size_t>>> choice(no);
      bool dead = false;
      for (std::size_t i = 0; i < no && !dead; ++i) {
        const std::size_t c = others[i].value;
        Integer s = sc[others[i]] - sc[p] - gain;
        for (std::size_t z = 0; z <= std::min(d1, v1_of[c].size()); ++z)
          for (std::size_t w = 0; w <= std::min(d2, v2_of[c].size()); ++w)
            if (s + beta * z + alpha * w <= 0) choice[i].push_back({z, w});
        dead = choice[i].empty();
      }
      if (dead) continue;
      layer[0][0] = 0;
      for (std::size_t i = 0; i < no; ++i)
        for (std::size_t a = 0; a <= d1; ++a)
          for (std::size_t b = 0; b <= d2; ++b) {
            if (layer[i][a * dw + b] < 0) continue;
            for (std::size_t ch = 0; ch < choice[i].size(); ++ch) {
              auto [z, w] = choice[i][ch];
              if (a + z > d1 || b + w > d2) continue;
              auto& slot = layer[i + 1][(a + z) * dw + (b + w)];
              if (slot < 0) slot = static_cast<int>(ch);
            }
          }
      if (layer[no][d1 * dw + d2] < 0) continue;
      std::size_t a = d1, b = d2;
      for (std::size_t i = no; i-- > 0;) {
        auto [z, w] = choice[i][static_cast<std::size_t>(layer[i + 1][a * dw + b])];
        const std::size_t c = others[i].value;
        for (std::size_t u = 0; u < z; ++u) out.deleted.push_back(v1_of[c][u]);
        for (std::size_t u = 0; u < w; ++u) out.deleted.push_back(v2_of[c][u]);
        a -= z;
        b -= w;
      }
      std::sort(out.deleted.begin(), out.deleted.end());
      out.feasible = true;
      if (!verify_ccdv(in, out)) throw InternalError("last-two deletion certificate failed verification");
      return out;
    }
  return out;
}

inline SolverOutcome solve_ccdv(const Instance& in, const OracleCaps& caps = {}) {
  in.validate();
  if (in.election.num_candidates() <= 1) return SolverOutcome{true, {}, {}, {}, "ccdv:trivial", {}};
  if (is_plurality(in.rule)) return solve_ccdv_plurality(in);
  if (match_last_two(in.rule)) return solve_ccdv_last_two(in);
  auto out = brute_ccdv(in, caps);
  out.notes.push_back(fallback_note(in.rule, Problem::Ccdv));
  return out;
}

}  // namespace scorectl

#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "scorectl/dispatch_notes.hpp"
#include "scorectl/flow.hpp"
#include "scorectl/manipulation.hpp"
#include "scorectl/oracles.hpp"
#include "scorectl/outcome.hpp"
#include "scorectl/rules.hpp"

namespace scorectl {

// Voter indices split by where p sits. The meaning of the classes depends
// on the rule family:
//   front/back: v1 = p last, v2 = p in the middle, v3 = p first
//   last-two:   v1 = p last, v2 = p second-to-last, v3 = everything else
struct VoterPartition {
  std::vector<std::size_t> v1, v2, v3;
};

inline VoterPartition partition_front_back(const Election& e, CandidateId p) {
  VoterPartition vp;
  const std::size_t m = e.num_candidates();
  std::size_t idx = 0;
  for (const auto& g : e.groups()) {
    std::size_t pos = g.vote.position_of(p);
    auto& cls = pos + 1 == m ? vp.v1 : pos == 0 ? vp.v3 : vp.v2;
    for (std::size_t i = 0; i < g.count; ++i) cls.push_back(idx++);
  }
  return vp;
}

inline VoterPartition partition_last_two(const Election& e, CandidateId p) {
  VoterPartition vp;
  const std::size_t m = e.num_candidates();
  std::size_t idx = 0;
  for (const auto& g : e.groups()) {
    std::size_t pos = g.vote.position_of(p);
    auto& cls = pos + 1 == m ? vp.v1 : pos + 2 == m ? vp.v2 : vp.v3;
    for (std::size_t i = 0; i < g.count; ++i) cls.push_back(idx++);
  }
  return vp;
}

struct V3Bound {
  Integer r;  // ceil(alpha / beta)
  Integer x;  // most voters outside V1 and V2 worth bribing
};

// With r = ceil(a/b): X = ceil((a/b - 1)(r - 1) / (a/b - r + 1)) + 1.
inline V3Bound v3_bound(const Integer& alpha, const Integer& beta) {
  if (beta <= 0 || alpha < beta) throw DomainError("v3_bound needs alpha >= beta > 0");
  Integer r = (alpha + beta - 1) / beta;
  // (a/b - 1)(r - 1) / (a/b - r + 1) = (a - b)(r - 1) / (a - (r - 1) b)
  Integer num = (alpha - beta) * (r - 1);
  Integer den = alpha - (r - 1) * beta;
  Integer q = (num + den - 1) / den;
  return {r, q + 1};
}

namespace detail {

inline SolverOutcome bribe_everything_needed(const Instance& in, const std::vector<std::size_t>& voters,
                                             std::string solver) {
  SolverOutcome out;
  out.feasible = true;
  out.solver = std::move(solver);
  out.bribed = voters;
  std::sort(out.bribed.begin(), out.bribed.end());
  const std::size_t m = in.election.num_candidates();
  for (std::size_t i = 0; i < out.bribed.size(); ++i) out.votes.push_back(vote_with_tail(m, in.preferred, {}));
  return out;
}

inline std::vector<std::int64_t> small_scores(const Instance& in, const std::vector<std::int64_t>& coef) {
  std::vector<std::int64_t> s(in.election.num_candidates(), 0);
  for (const auto& g : in.election.groups())
    for (std::size_t pos = 0; pos < g.vote.size(); ++pos)
      s[g.vote.at(pos).value] += coef[pos] * static_cast<std::int64_t>(g.count);
  return s;
}

inline CandidateId first_rival(CandidateId p) { return CandidateId(p.value == 0 ? 1 : 0); }

}  // namespace detail

// Rule equivalent to (1,0,...,0,-1). Three regimes by budget: only p-last
// voters worth bribing, everyone movable, or a min-cost flow in between.
inline SolverOutcome solve_bribery_front_back(const Instance& in) {
  in.validate();
  if (!is_front_back(in.rule)) throw UnsupportedRule("rule is not equivalent to (1,0,...,0,-1)");
  const auto& e = in.election;
  const std::size_t m = e.num_candidates();
  const CandidateId p = in.preferred;
  const std::size_t k = std::min(in.budget, e.num_votes());
  auto vp = partition_front_back(e, p);
  std::vector<std::int64_t> coef(m, 0);
  coef[0] = 1;
  coef[m - 1] -= 1;
  auto score = detail::small_scores(in, coef);
  const std::string name = "bribery:front-back";

  SolverOutcome out;
  out.solver = name;
  auto finish = [&](SolverOutcome o) {
    if (!verify_bribery(in, o)) throw InternalError("front/back bribery certificate failed verification");
    return o;
  };
  auto max_rival = [&](const std::vector<std::int64_t>& s) {
    std::size_t best = m;
    for (std::size_t c = 0; c < m; ++c)
      if (c != p.value && (best == m || s[c] > s[best])) best = c;
    return best;
  };

  if (m == 1) {
    out.feasible = true;
    return out;
  }

  if (k <= vp.v1.size()) {
    auto cur = score;
    std::vector<bool> taken(vp.v1.size(), false);
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t pick = vp.v1.size();
      for (std::size_t i = 0; i < vp.v1.size(); ++i) {
        if (taken[i]) continue;
        auto top = e.voter(vp.v1[i]).at(0).value;
        if (pick == vp.v1.size()) {
          pick = i;
          continue;
        }
        auto best = e.voter(vp.v1[pick]).at(0).value;
        if (cur[top] > cur[best] || (cur[top] == cur[best] && top < best)) pick = i;
      }
      taken[pick] = true;
      out.bribed.push_back(vp.v1[pick]);
      cur[e.voter(vp.v1[pick]).at(0).value] -= 1;
      cur[p.value] += 1;
    }
    for (std::size_t step = 0; step < k; ++step) {
      std::size_t c = max_rival(cur);
      out.votes.push_back(vote_with_tail(m, p, {CandidateId(c)}));
      cur[c] -= 1;
      cur[p.value] += 1;
    }
    if (!detail::fast_winner(cur, p.value)) return SolverOutcome{false, {}, {}, {}, name, {}};
    out.feasible = true;
    return finish(out);
  }

  if (k >= vp.v1.size() + vp.v2.size()) {
    std::vector<std::size_t> all = vp.v1;
    all.insert(all.end(), vp.v2.begin(), vp.v2.end());
    return finish(detail::bribe_everything_needed(in, all, name));
  }

  // All of V1 is bribed; T more bribes go to V2 voters.
  const std::int64_t T = static_cast<std::int64_t>(k - vp.v1.size());
  std::vector<std::int64_t> base(m, 0);  // scores of V2 u V3 only
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> v2_by_type;
  for (auto i : vp.v2) {
    const auto& v = e.voter(i);
    base[v.at(0).value] += 1;
    base[v.last().value] -= 1;
    v2_by_type[{v.at(0).value, v.last().value}].push_back(i);
  }
  for (auto i : vp.v3) {
    const auto& v = e.voter(i);
    base[v.at(0).value] += 1;
    base[v.last().value] -= 1;
  }
  const std::int64_t P = static_cast<std::int64_t>(vp.v3.size() + k);
  const std::int64_t B = static_cast<std::int64_t>(e.num_votes() + k + 1);

  // Nodes: source, sink, veto pool, then one per candidate.
  const std::size_t S = 0, Tn = 1, V = 2;
  FlowNetwork net(3 + m);
  std::int64_t need = 0;
  for (std::size_t c = 0; c < m; ++c) {
    if (c == p.value) continue;
    net.add_edge(S, 3 + c, base[c] + B);
    need += base[c] + B;
    net.add_edge(3 + c, Tn, P + B);
    net.add_edge(3 + c, V, static_cast<std::int64_t>(k));
  }
  net.add_edge(V, Tn, static_cast<std::int64_t>(k));
  std::vector<std::pair<std::size_t, std::pair<std::size_t, std::size_t>>> transfer_edges;
  for (const auto& [ty, voters] : v2_by_type)
    transfer_edges.push_back(
        {net.add_edge(3 + ty.first, 3 + ty.second, static_cast<std::int64_t>(voters.size()), 1), ty});
  auto flow = min_cost_flow(net, S, Tn, need);
  if (flow.value != need || flow.cost > T) return SolverOutcome{false, {}, {}, {}, name, {}};

  std::vector<std::size_t> bribed = vp.v1;
  std::vector<bool> used(e.num_votes(), false);
  std::vector<std::int64_t> fin = base;
  std::int64_t j = 0;
  for (const auto& [edge, ty] : transfer_edges) {
    const auto f = flow.flow[edge];
    const auto& voters = v2_by_type[ty];
    for (std::int64_t u = 0; u < f; ++u) {
      bribed.push_back(voters[static_cast<std::size_t>(u)]);
      used[voters[static_cast<std::size_t>(u)]] = true;
    }
    fin[ty.first] -= f;
    fin[ty.second] += f;
    j += f;
  }
  std::vector<std::int64_t> need_veto(m, 0);
  for (std::size_t c = 0; c < m; ++c)
    if (c != p.value) need_veto[c] = std::max<std::int64_t>(0, fin[c] - P);

  std::vector<std::size_t> extra_voters;
  std::vector<Vote> extra_votes;
  std::int64_t extra = T - j;
  for (int pass = 0; pass < 2 && extra > 0; ++pass)
    for (auto i : vp.v2) {
      if (extra == 0) break;
      if (used[i]) continue;
      const auto& v = e.voter(i);
      std::size_t top = v.at(0).value;
      if (pass == 0 && need_veto[top] == 0) continue;
      if (pass == 0) --need_veto[top];
      used[i] = true;
      extra_voters.push_back(i);
      extra_votes.push_back(vote_with_tail(m, p, {v.last()}));
      --extra;
    }
  std::vector<Vote> votes;
  for (std::size_t c = 0; c < m; ++c)
    for (std::int64_t u = 0; u < need_veto[c]; ++u) votes.push_back(vote_with_tail(m, p, {CandidateId(c)}));
  if (votes.size() > bribed.size()) throw InternalError("front/back certificate ran out of vetoes");
  while (votes.size() < bribed.size()) votes.push_back(vote_with_tail(m, p, {detail::first_rival(p)}));
  bribed.insert(bribed.end(), extra_voters.begin(), extra_voters.end());
  votes.insert(votes.end(), extra_votes.begin(), extra_votes.end());
  out.feasible = true;
  out.bribed = std::move(bribed);
  out.votes = std::move(votes);
  return finish(out);
}

// Rule equivalent to (0,...,0,-beta,-alpha).
inline SolverOutcome solve_bribery_last_two(const Instance& in) {
  in.validate();
  auto lt = match_last_two(in.rule);
  if (!lt) throw UnsupportedRule("rule is not of the form (0,...,0,-beta,-alpha)");
  const Integer beta = lt->beta, alpha = lt->alpha;
  const auto& e = in.election;
  const std::size_t m = e.num_candidates();
  const CandidateId p = in.preferred;
  const std::size_t k = std::min(in.budget, e.num_votes());
  const std::string name = "bribery:last-two";
  auto finish = [&](SolverOutcome o) {
    o.solver = name;
    if (!verify_bribery(in, o)) throw InternalError("last-two bribery certificate failed verification");
    return o;
  };

  if (alpha == 0) return finish(SolverOutcome{true, {}, {}, {}, name, {}});

  auto vp = partition_last_two(e, p);
  ScoreTable sc = score_all(e, in.rule);

  if (beta == 0) {
    // Single veto: bribed p-last voters only matter through p.
    if (k >= vp.v1.size()) return finish(detail::bribe_everything_needed(in, vp.v1, name));
    std::vector<std::size_t> lasts(m, 0);
    for (auto i : vp.v2) ++lasts[e.voter(i).last().value];
    for (auto i : vp.v3) ++lasts[e.voter(i).last().value];
    const std::size_t target = vp.v1.size() - k;
    std::vector<Vote> votes;
    for (std::size_t c = 0; c < m; ++c) {
      if (c == p.value) continue;
      for (std::size_t d = lasts[c]; d < target; ++d) votes.push_back(vote_with_tail(m, p, {CandidateId(c)}));
    }
    if (votes.size() > k) return SolverOutcome{false, {}, {}, {}, name, {}};
    while (votes.size() < k) votes.push_back(vote_with_tail(m, p, {detail::first_rival(p)}));
    std::vector<std::size_t> bribed(vp.v1.begin(), vp.v1.begin() + static_cast<std::ptrdiff_t>(k));
    return finish(SolverOutcome{true, {}, std::move(bribed), std::move(votes), name, {}});
  }

  const std::size_t X = static_cast<std::size_t>(v3_bound(alpha, beta).x);

  // Per-candidate pools of p-last voters with c second-to-last, and
  // p-second-to-last voters with c last.
  std::vector<std::vector<std::size_t>> v1_of(m), v2_of(m);
  for (auto i : vp.v1) v1_of[e.voter(i).at(m - 2).value].push_back(i);
  for (auto i : vp.v2) v2_of[e.voter(i).last().value].push_back(i);
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> v3_types;
  for (auto i : vp.v3) v3_types[{e.voter(i).at(m - 2).value, e.voter(i).last().value}].push_back(i);
  std::vector<std::pair<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>>> types(v3_types.begin(),
                                                                                             v3_types.end());

  std::vector<CandidateId> others = others_in_order(m, p);
  const std::size_t no = others.size();
  const auto prof = CoefficientProfile::from_vector(in.rule);

  std::vector<std::size_t> v3_pick(types.size(), 0);
  std::optional<SolverOutcome> found;

  // DP over candidates for one (V3 choice, k1, k2).
  auto attempt = [&](const std::vector<Integer>& base_sur, std::size_t k1, std::size_t k2, std::size_t t) -> bool {
    struct Choice {
      std::size_t x, y, z, w;
    };
    const std::size_t dx = t + 1, dz = k1 + 1, dw = k2 + 1;
    const std::size_t states = dx * dx * dz * dw;
    auto enc = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) { return ((a * dx + b) * dz + c) * dw + d; };
    std::vector<std::vector<Choice>> choice(no);
    for (std::size_t i = 0; i < no; ++i) {
      const std::size_t c = others[i].value;
      for (std::size_t x = 0; x <= t; ++x)
        for (std::size_t y = 0; x + y <= t; ++y)
          for (std::size_t z = 0; z <= std::min(k1, v1_of[c].size()); ++z)
            for (std::size_t w = 0; w <= std::min(k2, v2_of[c].size()); ++w)
              if (base_sur[i] - beta * x - alpha * y + beta * z + alpha * w <= 0) choice[i].push_back({x, y, z, w});
      if (choice[i].empty()) return false;
    }
    std::vector<std::vector<int>> layer(no + 1, std::vector<int>(states, -1));
    layer[0][0] = 0;
    for (std::size_t i = 0; i < no; ++i)
      for (std::size_t a = 0; a <= t; ++a)
        for (std::size_t b = 0; b <= t; ++b)
          for (std::size_t c = 0; c <= k1; ++c)
            for (std::size_t d = 0; d <= k2; ++d) {
              if (layer[i][enc(a, b, c, d)] < 0) continue;
              for (std::size_t ch = 0; ch < choice[i].size(); ++ch) {
                const auto& o = choice[i][ch];
                if (a + o.x > t || b + o.y > t || c + o.z > k1 || d + o.w > k2) continue;
                auto& slot = layer[i + 1][enc(a + o.x, b + o.y, c + o.z, d + o.w)];
                if (slot < 0) slot = static_cast<int>(ch);
              }
            }
    if (layer[no][enc(t, t, k1, k2)] < 0) return false;

    Assignment asg(no);
    std::vector<std::size_t> bribed;
    std::size_t a = t, b = t, c = k1, d = k2;
    for (std::size_t i = no; i-- > 0;) {
      const auto& o = choice[i][static_cast<std::size_t>(layer[i + 1][enc(a, b, c, d)])];
      if (prof.penalties.size() == 1)
        asg[i] = {o.x + o.y};
      else
        asg[i] = {o.x, o.y};
      const std::size_t cand = others[i].value;
      for (std::size_t u = 0; u < o.z; ++u) bribed.push_back(v1_of[cand][u]);
      for (std::size_t u = 0; u < o.w; ++u) bribed.push_back(v2_of[cand][u]);
      a -= o.x;
      b -= o.y;
      c -= o.z;
      d -= o.w;
    }
    for (std::size_t ty = 0; ty < types.size(); ++ty)
      for (std::size_t u = 0; u < v3_pick[ty]; ++u) bribed.push_back(types[ty].second[u]);
    std::sort(bribed.begin(), bribed.end());
    auto votes = votes_from_assignment(std::move(asg), prof, t, p, others);
    found = SolverOutcome{true, {}, std::move(bribed), std::move(votes), name, {}};
    return true;
  };

  auto try_v3 = [&](std::size_t s3) -> bool {
    std::vector<Integer> sur(no);
    for (std::size_t i = 0; i < no; ++i) sur[i] = sc[others[i]] - sc[p];
    for (std::size_t ty = 0; ty < types.size(); ++ty) {
      if (v3_pick[ty] == 0) continue;
      // Bribing these voters removes the penalties they gave.
      auto [a, b] = types[ty].first;
      for (std::size_t i = 0; i < no; ++i) {
        if (others[i].value == a) sur[i] += beta * v3_pick[ty];
        if (others[i].value == b) sur[i] += alpha * v3_pick[ty];
      }
    }
    for (std::size_t k1 = 0; k1 <= vp.v1.size() && s3 + k1 <= k; ++k1)
      for (std::size_t k2 = 0; k2 <= vp.v2.size() && s3 + k1 + k2 <= k; ++k2) {
        std::vector<Integer> s = sur;
        for (auto& x : s) x -= alpha * k1 + beta * k2;
        if (attempt(s, k1, k2, s3 + k1 + k2)) return true;
      }
    return false;
  };

  std::function<bool(std::size_t, std::size_t, std::size_t)> over_v3 = [&](std::size_t ty, std::size_t left,
                                                                           std::size_t chosen) -> bool {
    if (ty == types.size()) return try_v3(chosen);
    for (std::size_t u = 0; u <= std::min(left, types[ty].second.size()); ++u) {
      v3_pick[ty] = u;
      if (over_v3(ty + 1, left - u, chosen + u)) return true;
    }
    v3_pick[ty] = 0;
    return false;
  };
  if (over_v3(0, std::min({X, k, vp.v3.size()}), 0)) return finish(std::move(*found));
  return SolverOutcome{false, {}, {}, {}, name, {}};
}

// Pick a solver by rule shape; anything else goes to exhaustive search.
inline SolverOutcome solve_bribery(const Instance& in, const OracleCaps& caps = {}) {
  in.validate();
  if (in.election.num_candidates() <= 1) return SolverOutcome{true, {}, {}, {}, "bribery:trivial", {}};
  if (is_front_back(in.rule)) return solve_bribery_front_back(in);
  if (match_last_two(in.rule)) return solve_bribery_last_two(in);
  auto out = brute_bribery(in, caps);
  out.notes.push_back(fallback_note(in.rule, Problem::Bribery));
  return out;
}

}  // namespace scorectl

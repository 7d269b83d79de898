#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "scorectl/manipulation.hpp"
#include "scorectl/outcome.hpp"
#include "scorectl/three_dm.hpp"

namespace scorectl {

// Limits for the exhaustive searches. `max_states` bounds the number of
// configurations a search may visit; it is checked before starting.
struct OracleCaps {
  std::size_t max_candidates = 16;
  std::size_t max_votes = 100000;
  std::size_t max_budget = 6;
  std::uint64_t max_states = 100'000'000;
  std::size_t max_3dm_size = 5;
};

namespace detail {

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

inline std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

// Multisets of size k drawn from n kinds.
inline std::uint64_t multichoose(std::uint64_t n, std::uint64_t k) {
  if (k == 0) return 1;
  if (n == 0) return 0;
  long double r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * static_cast<long double>(n - 1 + i) / static_cast<long double>(i);
  if (r > 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(r + 0.5L);
}

// Sub-multisets of each size 0..k given per-kind availability.
inline std::vector<std::uint64_t> submultiset_counts(const std::vector<std::size_t>& avail, std::size_t k) {
  std::vector<std::uint64_t> ways(k + 1, 0);
  ways[0] = 1;
  for (auto a : avail) {
    std::vector<std::uint64_t> next(k + 1, 0);
    for (std::size_t s = 0; s <= k; ++s)
      for (std::size_t t = 0; t <= a && s + t <= k; ++t) next[s + t] = sat_add(next[s + t], ways[s]);
    ways = std::move(next);
  }
  return ways;
}

inline std::uint64_t factorial_sat(std::size_t n) {
  std::uint64_t f = 1;
  for (std::size_t i = 2; i <= n; ++i) f = sat_mul(f, i);
  return f;
}

// Scores fit comfortably in int64, or the oracle refuses.
struct FastRule {
  std::vector<std::int64_t> coef;
};

inline FastRule fast_rule(const ScoringVector& g, std::size_t weight) {
  FastRule r;
  Integer bound = 0;
  for (auto c : g.coefficients()) bound = std::max(bound, Integer(c < 0 ? Integer(-c) : c));
  if (bound * Integer(weight + 1) > Integer(std::numeric_limits<std::int64_t>::max() / 4))
    throw CapExceeded("magnitude", "coefficients too large for the exhaustive search");
  for (auto c : g.coefficients()) r.coef.push_back(static_cast<std::int64_t>(c));
  return r;
}

inline void check_common_caps(const Instance& in, const OracleCaps& caps) {
  in.validate();
  if (in.election.num_candidates() > caps.max_candidates)
    throw CapExceeded("candidates", "exhaustive search limited to " + std::to_string(caps.max_candidates) +
                                        " candidates");
  if (in.election.num_votes() > caps.max_votes)
    throw CapExceeded("votes", "exhaustive search limited to " + std::to_string(caps.max_votes) + " votes");
  if (in.budget > caps.max_budget)
    throw CapExceeded("budget", "exhaustive search limited to budget " + std::to_string(caps.max_budget));
}

inline bool fast_winner(const std::vector<std::int64_t>& s, std::size_t p) {
  for (auto v : s)
    if (v > s[p]) return false;
  return true;
}

// All rankings with p first, in lexicographic order of the remaining ids.
inline std::vector<std::vector<std::size_t>> p_first_rankings(std::size_t m, std::size_t p) {
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < m; ++c)
    if (c != p) rest.push_back(c);
  std::vector<std::vector<std::size_t>> out;
  do {
    std::vector<std::size_t> r{p};
    r.insert(r.end(), rest.begin(), rest.end());
    out.push_back(std::move(r));
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

inline Vote to_vote(const std::vector<std::size_t>& r) {
  std::vector<CandidateId> v;
  for (auto c : r) v.emplace_back(c);
  return Vote(std::move(v));
}

// Try every multiset of k p-first rankings on top of `base`.
inline std::optional<std::vector<Vote>> exhaustive_manipulation(const std::vector<std::int64_t>& base,
                                                                const FastRule& rule, std::size_t p, std::size_t k) {
  const std::size_t m = base.size();
  auto ranks = p_first_rankings(m, p);
  std::vector<std::vector<std::int64_t>> gain(ranks.size(), std::vector<std::int64_t>(m));
  for (std::size_t i = 0; i < ranks.size(); ++i)
    for (std::size_t pos = 0; pos < m; ++pos) gain[i][ranks[i][pos]] = rule.coef[pos];
  std::vector<std::int64_t> cur = base;
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> dfs = [&](std::size_t from) -> bool {
    if (pick.size() == k) return fast_winner(cur, p);
    for (std::size_t i = from; i < ranks.size(); ++i) {
      for (std::size_t c = 0; c < m; ++c) cur[c] += gain[i][c];
      pick.push_back(i);
      if (dfs(i)) return true;
      pick.pop_back();
      for (std::size_t c = 0; c < m; ++c) cur[c] -= gain[i][c];
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  std::vector<Vote> votes;
  for (auto i : pick) votes.push_back(to_vote(ranks[i]));
  return votes;
}

inline std::vector<std::int64_t> fast_scores(const Election& e, const FastRule& r) {
  std::vector<std::int64_t> s(e.num_candidates(), 0);
  for (const auto& g : e.groups())
    for (std::size_t pos = 0; pos < g.vote.size(); ++pos)
      s[g.vote.at(pos).value] += r.coef[pos] * static_cast<std::int64_t>(g.count);
  return s;
}

// Enumerate sub-multisets of vote groups of exactly `size` votes, calling
// visit(counts, scores) with scores of the remaining election. Stops when
// visit returns true.
inline bool for_each_deletion(const Election& e, const FastRule& r, const std::vector<std::size_t>& avail,
                              std::size_t size, const std::function<bool(const std::vector<std::size_t>&,
                                                                         const std::vector<std::int64_t>&)>& visit) {
  const auto& groups = e.groups();
  const std::size_t m = e.num_candidates();
  std::vector<std::vector<std::int64_t>> per(groups.size(), std::vector<std::int64_t>(m));
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (std::size_t pos = 0; pos < m; ++pos) per[g][groups[g].vote.at(pos).value] = r.coef[pos];
  std::vector<std::int64_t> cur = fast_scores(e, r);
  std::vector<std::size_t> counts(groups.size(), 0);
  std::vector<std::size_t> suffix_avail(groups.size() + 1, 0);
  for (std::size_t g = groups.size(); g-- > 0;) suffix_avail[g] = suffix_avail[g + 1] + avail[g];
  std::function<bool(std::size_t, std::size_t)> dfs = [&](std::size_t g, std::size_t left) -> bool {
    if (left == 0) return visit(counts, cur);
    if (g == groups.size() || suffix_avail[g] < left) return false;
    for (std::size_t t = std::min(left, avail[g]);; --t) {
      counts[g] = t;
      for (std::size_t c = 0; c < m; ++c) cur[c] -= per[g][c] * static_cast<std::int64_t>(t);
      bool hit = dfs(g + 1, left - t);
      for (std::size_t c = 0; c < m; ++c) cur[c] += per[g][c] * static_cast<std::int64_t>(t);
      counts[g] = 0;
      if (hit) return true;
      if (t == 0) break;
    }
    return false;
  };
  return dfs(0, size);
}

// Voter indices for a per-group count vector, lowest allowed indices first.
inline std::vector<std::size_t> voters_for_counts(const Election& e, const std::vector<std::size_t>& counts,
                                                  const std::vector<bool>* allowed) {
  std::vector<std::size_t> out;
  std::size_t base = 0;
  for (std::size_t g = 0; g < e.groups().size(); ++g) {
    std::size_t need = counts[g];
    for (std::size_t i = 0; i < e.groups()[g].count && need > 0; ++i)
      if (!allowed || (*allowed)[base + i]) {
        out.push_back(base + i);
        --need;
      }
    base += e.groups()[g].count;
  }
  return out;
}

}  // namespace detail

inline SolverOutcome brute_manipulation(const Election& e, const ScoringVector& g, CandidateId p, std::size_t k,
                                        const OracleCaps& caps = {}) {
  Instance in{e, g, p, k};
  detail::check_common_caps(in, caps);
  auto perms = detail::factorial_sat(e.num_candidates() - 1);
  if (detail::multichoose(perms, k) > caps.max_states)
    throw CapExceeded("states", "manipulation search space too large");
  auto rule = detail::fast_rule(g, e.num_votes() + k);
  SolverOutcome out;
  out.solver = "oracle:manipulation";
  if (auto v = detail::exhaustive_manipulation(detail::fast_scores(e, rule), rule, p.value, k)) {
    out.feasible = true;
    out.votes = std::move(*v);
  }
  return out;
}

// Surplus-level variant: candidate 0 is preferred and surpluses[i] belongs to
// candidate i + 1.
inline std::optional<std::vector<Vote>> brute_manipulation_surplus(const std::vector<Integer>& surpluses,
                                                                  const ScoringVector& g, std::size_t k,
                                                                  const OracleCaps& caps = {}) {
  if (g.size() != surpluses.size() + 1) throw DimensionError("scoring vector length must be candidates + 1");
  if (g.size() > caps.max_candidates) throw CapExceeded("candidates", "too many candidates");
  if (k > caps.max_budget) throw CapExceeded("budget", "too many manipulators");
  if (detail::multichoose(detail::factorial_sat(g.size() - 1), k) > caps.max_states)
    throw CapExceeded("states", "manipulation search space too large");
  Integer mag = 0;
  for (const auto& s : surpluses) mag = std::max(mag, Integer(s < 0 ? Integer(-s) : s));
  std::size_t weight = k;
  auto rule = detail::fast_rule(g, weight);
  if (mag > Integer(std::numeric_limits<std::int64_t>::max() / 4))
    throw CapExceeded("magnitude", "surpluses too large for the exhaustive search");
  std::vector<std::int64_t> base{0};
  for (const auto& s : surpluses) base.push_back(static_cast<std::int64_t>(s));
  return detail::exhaustive_manipulation(base, rule, 0, k);
}

struct CcdvOracleOptions {
  // Skip votes where p already sits at the top coefficient. Deleting such a
  // vote never lowers any rival's lead over p, so this does not change the
  // answer; it only shrinks the search.
  bool skip_p_top = false;
};

inline SolverOutcome brute_ccdv(const Instance& in, const OracleCaps& caps = {}, CcdvOracleOptions opt = {}) {
  detail::check_common_caps(in, caps);
  const auto& e = in.election;
  std::vector<std::size_t> avail;
  for (const auto& g : e.groups()) {
    bool top = in.rule[g.vote.position_of(in.preferred)] == in.rule[0];
    avail.push_back(opt.skip_p_top && top ? 0 : g.count);
  }
  const std::size_t k = std::min(in.budget, e.num_votes());
  auto counts = detail::submultiset_counts(avail, k);
  std::uint64_t total = 0;
  for (auto c : counts) total = detail::sat_add(total, c);
  if (total > caps.max_states) throw CapExceeded("states", "deletion search space too large");
  auto rule = detail::fast_rule(in.rule, e.num_votes());
  SolverOutcome out;
  out.solver = "oracle:ccdv";
  for (std::size_t s = 0; s <= k && !out.feasible; ++s) {
    detail::for_each_deletion(e, rule, avail, s, [&](const std::vector<std::size_t>& cnt, const std::vector<std::int64_t>& sc) {
      if (!detail::fast_winner(sc, in.preferred.value)) return false;
      out.feasible = true;
      out.deleted = detail::voters_for_counts(e, cnt, nullptr);
      return true;
    });
  }
  return out;
}

enum class ManipulationBackend { Exhaustive, Table };

struct BriberyOracleOptions {
  // When set, only voters marked true may be bribed.
  std::optional<std::vector<bool>> allowed;
  // Table uses the manipulation DP (itself checked against the exhaustive
  // search) to finish each deletion; needed once rankings are too many to list.
  ManipulationBackend backend = ManipulationBackend::Exhaustive;
};

inline SolverOutcome brute_bribery(const Instance& in, const OracleCaps& caps = {}, BriberyOracleOptions opt = {}) {
  detail::check_common_caps(in, caps);
  const auto& e = in.election;
  const std::size_t m = e.num_candidates();
  const std::size_t p = in.preferred.value;
  if (opt.allowed && opt.allowed->size() != e.num_votes()) throw DimensionError("allowed mask has wrong length");

  std::vector<std::size_t> avail;
  {
    std::size_t base = 0;
    for (const auto& g : e.groups()) {
      std::size_t a = 0;
      for (std::size_t i = 0; i < g.count; ++i)
        if (!opt.allowed || (*opt.allowed)[base + i]) ++a;
      avail.push_back(a);
      base += g.count;
    }
  }
  const std::size_t k = std::min(in.budget, e.num_votes());
  auto counts = detail::submultiset_counts(avail, k);
  std::uint64_t total = 0;
  const std::uint64_t perms = detail::factorial_sat(m - 1);
  for (std::size_t j = 0; j <= k; ++j) {
    std::uint64_t inner = opt.backend == ManipulationBackend::Exhaustive ? detail::multichoose(perms, j) : 1;
    total = detail::sat_add(total, detail::sat_mul(counts[j], inner));
  }
  if (total > caps.max_states) throw CapExceeded("states", "bribery search space too large");

  auto rule = detail::fast_rule(in.rule, e.num_votes() + k);
  auto prof = CoefficientProfile::from_vector(in.rule);
  std::int64_t max_pen = 0, sum_pen = 0;
  for (std::size_t pos = 0; pos < m; ++pos) {
    std::int64_t pen = rule.coef[0] - rule.coef[pos];
    max_pen = std::max(max_pen, pen);
    sum_pen += pen;
  }
  std::map<std::vector<std::int64_t>, bool> memo;

  SolverOutcome out;
  out.solver = "oracle:bribery";
  for (std::size_t j = 0; j <= k && !out.feasible; ++j) {
    detail::for_each_deletion(e, rule, avail, j, [&](const std::vector<std::size_t>& cnt, const std::vector<std::int64_t>& sc) {
      std::optional<std::vector<Vote>> votes;
      if (opt.backend == ManipulationBackend::Exhaustive) {
        votes = detail::exhaustive_manipulation(sc, rule, p, j);
      } else {
        std::vector<std::int64_t> pos_s;
        std::int64_t nonpos = 0, tot = 0;
        for (std::size_t c = 0; c < m; ++c) {
          if (c == p) continue;
          std::int64_t s = sc[c] - sc[p];
          if (s > 0) {
            pos_s.push_back(s);
            tot += s;
          } else {
            ++nonpos;
          }
        }
        const auto jj = static_cast<std::int64_t>(j);
        for (auto s : pos_s)
          if (s > jj * max_pen) return false;
        if (tot > jj * sum_pen) return false;
        std::sort(pos_s.begin(), pos_s.end());
        std::vector<std::int64_t> key{jj, nonpos};
        key.insert(key.end(), pos_s.begin(), pos_s.end());
        auto it = memo.find(key);
        std::vector<Integer> sur;
        std::vector<CandidateId> others;
        for (std::size_t c = 0; c < m; ++c)
          if (c != p) {
            sur.emplace_back(sc[c] - sc[p]);
            others.emplace_back(c);
          }
        auto q = DPQuery::for_profile(prof, j, sur);
        if (it != memo.end() && !it->second) return false;
        votes = reconstruct(q, prof, in.preferred, others);
        memo[key] = votes.has_value();
      }
      if (!votes) return false;
      out.feasible = true;
      out.bribed = detail::voters_for_counts(e, cnt, opt.allowed ? &*opt.allowed : nullptr);
      out.votes = std::move(*votes);
      return true;
    });
  }
  return out;
}

// Depth-first search over x elements in order.
inline std::optional<std::vector<std::size_t>> brute_3dm(const ThreeDmInstance& inst, const OracleCaps& caps = {}) {
  inst.validate();
  if (inst.k() > caps.max_3dm_size)
    throw CapExceeded("3dm", "exhaustive cover search limited to |X| <= " + std::to_string(caps.max_3dm_size));
  const std::size_t k = inst.k();
  std::vector<std::vector<std::size_t>> by_x(k);
  for (std::size_t i = 0; i < inst.triples.size(); ++i) by_x[inst.triples[i].x].push_back(i);
  std::vector<bool> uy(k), uz(k);
  std::vector<std::size_t> pick;
  std::function<bool(std::size_t)> dfs = [&](std::size_t x) -> bool {
    if (x == k) return true;
    for (auto i : by_x[x]) {
      const auto& t = inst.triples[i];
      if (uy[t.y] || uz[t.z]) continue;
      uy[t.y] = uz[t.z] = true;
      pick.push_back(i);
      if (dfs(x + 1)) return true;
      pick.pop_back();
      uy[t.y] = uz[t.z] = false;
    }
    return false;
  };
  if (!dfs(0)) return std::nullopt;
  return pick;
}

}  // namespace scorectl

#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "scorectl/outcome.hpp"
#include "scorectl/three_dm.hpp"

namespace scorectl {

// ---------------------------------------------------------------------------
// Realizing relative scores with whole votes.

namespace detail {

// Unbounded coin change: one way to write `value` with `coins`, or nullopt.
inline std::optional<std::vector<std::size_t>> coin_split(std::size_t value, const std::vector<std::size_t>& coins) {
  constexpr std::size_t kLimit = 5'000'000;
  if (value > kLimit) throw CapExceeded("realize", "target difference too large to split into votes");
  std::vector<std::ptrdiff_t> via(value + 1, -1);
  via[0] = 0;
  for (std::size_t v = 1; v <= value; ++v)
    for (std::size_t c = 0; c < coins.size(); ++c)
      if (coins[c] > 0 && coins[c] <= v && via[v - coins[c]] >= 0) {
        via[v] = static_cast<std::ptrdiff_t>(c);
        break;
      }
  if (via[value] < 0) return std::nullopt;
  std::vector<std::size_t> use(coins.size(), 0);
  for (std::size_t v = value; v > 0; v -= coins[static_cast<std::size_t>(via[v])]) ++use[static_cast<std::size_t>(via[v])];
  return use;
}

// A full cyclic rotation in which candidate c sits last exactly when the
// dummy sits at position i; then c and the dummy swap in that vote.
inline std::vector<Vote> swap_gadget(std::size_t m, std::size_t c, std::size_t dummy, std::size_t i) {
  std::vector<CandidateId> base(m);
  std::vector<bool> placed(m, false);
  base[m - 1] = CandidateId(c);
  base[i] = CandidateId(dummy);
  placed[c] = placed[dummy] = true;
  std::size_t next = 0;
  for (std::size_t pos = 0; pos < m; ++pos) {
    if (pos == m - 1 || pos == i) continue;
    while (placed[next]) ++next;
    base[pos] = CandidateId(next);
    placed[next] = true;
  }
  std::vector<Vote> out;
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<CandidateId> r(m);
    for (std::size_t pos = 0; pos < m; ++pos) r[pos] = base[(pos + s) % m];
    if (s == 0) std::swap(r[m - 1], r[i]);
    out.emplace_back(std::move(r));
  }
  return out;
}

}  // namespace detail

// Votes over targets.size() + 1 candidates (the last is a dummy) under
// `rule` such that score(a) - score(b) = targets[a] - targets[b] for all
// real candidates, and the dummy trails every real candidate by at least
// `dummy_margin`.
inline std::vector<Vote> realize_scores(const std::vector<Integer>& targets, const ScoringVector& rule,
                                        const Integer& dummy_margin = 0) {
  const std::size_t m = targets.size() + 1;
  if (rule.size() != m) throw DimensionError("rule length must be number of targets + 1");
  if (m < 2) return {};
  std::vector<std::size_t> gaps;
  Integer g = 0;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    Integer gap = rule[i] - rule[m - 1];
    auto v = to_int64(gap);
    if (!v || *v > 1'000'000) throw CapExceeded("realize", "coefficients too large to realize");
    gaps.push_back(static_cast<std::size_t>(*v));
    g = integer_gcd(g, gap);
  }
  if (g == 0) throw DomainError("a constant rule cannot separate candidates");
  Integer lo = *std::min_element(targets.begin(), targets.end());
  for (const auto& t : targets)
    if ((t - lo) % g != 0) throw DomainError("target differences are not multiples of the coefficient gcd");

  const std::size_t dummy = m - 1;
  std::vector<Vote> votes;
  for (Integer shift = 0;; shift += g) {
    std::vector<std::vector<std::size_t>> plan;
    bool ok = true;
    for (const auto& t : targets) {
      auto v = to_int64(t - lo + shift);
      if (!v) throw CapExceeded("realize", "target difference too large");
      auto use = detail::coin_split(static_cast<std::size_t>(*v), gaps);
      if (!use) {
        ok = false;
        break;
      }
      plan.push_back(std::move(*use));
    }
    if (!ok) continue;
    for (std::size_t c = 0; c + 1 < m; ++c)
      for (std::size_t i = 0; i < gaps.size(); ++i)
        for (std::size_t u = 0; u < plan[c][i]; ++u) {
          auto gv = detail::swap_gadget(m, c, dummy, i);
          votes.insert(votes.end(), gv.begin(), gv.end());
        }
    break;
  }
  // Widen the dummy's deficit with gadgets that treat every real candidate alike.
  std::size_t widest = 0;
  for (std::size_t i = 0; i < gaps.size(); ++i)
    if (gaps[i] > gaps[widest]) widest = i;
  auto deficit = [&] {
    Election e = Election::from_votes(m, votes);
    auto s = score_all(e, rule);
    Integer best = s.scores[0];
    for (std::size_t c = 0; c + 1 < m; ++c) best = std::min(best, s.scores[c]);
    return best - s.scores[dummy];
  };
  while (deficit() < dummy_margin)
    for (std::size_t c = 0; c + 1 < m; ++c) {
      auto gv = detail::swap_gadget(m, c, dummy, widest);
      votes.insert(votes.end(), gv.begin(), gv.end());
    }
  return votes;
}

// ---------------------------------------------------------------------------
// 3DM to control by deleting voters / bribery, rule (0,...,0,-gamma,-beta,-alpha).

enum class ReductionTarget { Ccdv, Bribery };

struct TailParams {
  Integer alpha, beta, gamma;

  void validate() const {
    if (!(gamma > 0 && gamma <= beta && beta <= alpha && gamma < alpha))
      throw DomainError("reduction needs 0 < gamma <= beta <= alpha and gamma < alpha");
  }
};

struct ManifestEntry {
  std::size_t group = 0;     // vote group in the output election
  std::string role;          // "3dm", "g-vote", "setup", "dummy"
  std::optional<std::size_t> tuple;
  std::string slot;          // which of the four votes of a tuple: "x", "y", "z", "s"
  std::string target;        // setup: candidate losing points
  std::string loss;          // setup: "alpha", "beta" or "gamma"
};

struct ReductionOutput {
  ReductionTarget target = ReductionTarget::Ccdv;
  Instance instance;
  TailParams params;
  ThreeDmInstance source;      // the instance actually encoded (after padding)
  std::size_t padding = 0;     // forced components added to make losses realizable
  std::size_t g_votes = 0;     // copies per G-vote (bribery only)
  std::vector<ManifestEntry> manifest;
  std::vector<Integer> setup_loss;  // per candidate, points lost against p in setup votes
  // tuple_group[i][s]: group of the s-th vote of tuple i (order x, y, z, s).
  std::vector<std::array<std::size_t, 4>> tuple_group;
};

namespace detail {

struct Layout {
  std::vector<std::string> names;
  std::size_t p = 0, x0 = 0, y0 = 0, z0 = 0, s0 = 0, sp0 = 0, b0 = 0, d0 = 0;
};

inline Layout make_layout(const ThreeDmInstance& inst, bool bribery) {
  Layout l;
  const std::size_t k = inst.k(), n = inst.triples.size();
  l.names.push_back("p");
  l.x0 = l.names.size();
  l.names.insert(l.names.end(), inst.xs.begin(), inst.xs.end());
  l.y0 = l.names.size();
  l.names.insert(l.names.end(), inst.ys.begin(), inst.ys.end());
  l.z0 = l.names.size();
  l.names.insert(l.names.end(), inst.zs.begin(), inst.zs.end());
  l.s0 = l.names.size();
  for (std::size_t i = 0; i < n; ++i) l.names.push_back("S" + std::to_string(i + 1));
  l.sp0 = l.names.size();
  for (std::size_t i = 0; i < n; ++i) l.names.push_back("S" + std::to_string(i + 1) + "'");
  l.b0 = l.names.size();
  if (bribery) {
    l.names.push_back("b_alpha");
    l.names.push_back("b_beta");
    l.names.push_back("b_gamma");
  }
  l.d0 = l.names.size();
  for (int i = 1; i <= 3; ++i) l.names.push_back("d" + std::to_string(i));
  std::set<std::string> uniq(l.names.begin(), l.names.end());
  if (uniq.size() != l.names.size()) throw DomainError("3DM element names clash with generated candidate names");
  (void)k;
  return l;
}

// p first, then filler, then the three tail slots (-gamma, -beta, -alpha).
inline Vote tail_vote(std::size_t m, std::size_t first, std::size_t g, std::size_t b, std::size_t a) {
  std::vector<bool> placed(m, false);
  placed[first] = placed[g] = placed[b] = placed[a] = true;
  std::vector<CandidateId> r{CandidateId(first)};
  for (std::size_t c = 0; c < m; ++c)
    if (!placed[c]) r.emplace_back(c);
  r.emplace_back(g);
  r.emplace_back(b);
  r.emplace_back(a);
  return Vote(std::move(r));
}

// Nonnegative a, b, c with a*alpha + b*beta + c*gamma = loss, fewest alpha
// votes first, then fewest gamma votes.
inline std::optional<std::array<Integer, 3>> split_loss(const Integer& loss, const TailParams& t) {
  if (loss < 0) return std::nullopt;
  for (Integer a = 0; a * t.alpha <= loss; ++a)
    for (Integer c = 0; a * t.alpha + c * t.gamma <= loss; ++c) {
      Integer rest = loss - a * t.alpha - c * t.gamma;
      if (rest % t.beta == 0) return std::array<Integer, 3>{a, rest / t.beta, c};
    }
  return std::nullopt;
}

inline std::optional<ReductionOutput> try_build(const ThreeDmInstance& inst, const TailParams& t, bool bribery,
                                                std::size_t G) {
  const Layout l = make_layout(inst, bribery);
  const std::size_t m = l.names.size();
  const std::size_t n = inst.triples.size(), k = inst.k();
  std::vector<Integer> coef(m, 0);
  coef[m - 3] = -t.gamma;
  coef[m - 2] = -t.beta;
  coef[m - 1] = -t.alpha;
  ScoringVector rule(coef);

  ReductionOutput out;
  out.target = bribery ? ReductionTarget::Bribery : ReductionTarget::Ccdv;
  out.params = t;
  out.source = inst;
  out.g_votes = bribery ? G : 0;
  Election e(l.names, {});
  auto emit = [&](const Vote& v, std::size_t count, ManifestEntry me) {
    if (count == 0) return;
    std::size_t before = e.groups().size();
    e.add(v, count);
    if (e.groups().size() == before) throw InternalError("reduction produced two roles for one vote");
    me.group = before;
    out.manifest.push_back(std::move(me));
  };

  // Every tuple: four single votes with p in the -beta slot, and for bribery
  // G copies of each with p and the -gamma candidate swapped.
  out.tuple_group.resize(n);
  const std::string slots[4] = {"x", "y", "z", "s"};
  for (std::size_t i = 0; i < n; ++i) {
    const auto& tr = inst.triples[i];
    const std::size_t S = l.s0 + i, Sp = l.sp0 + i;
    const std::size_t gcand[4] = {S, S, Sp, Sp};
    const std::size_t last[4] = {l.x0 + tr.x, l.y0 + tr.y, l.z0 + tr.z, S};
    for (int s = 0; s < 4; ++s) {
      std::vector<bool> placed(m, false);
      placed[gcand[s]] = placed[l.p] = placed[last[s]] = true;
      std::vector<CandidateId> r;
      for (std::size_t c = 0; c < m; ++c)
        if (!placed[c]) r.emplace_back(c);
      r.emplace_back(gcand[s]);
      r.emplace_back(l.p);
      r.emplace_back(last[s]);
      out.tuple_group[i][static_cast<std::size_t>(s)] = e.groups().size();
      emit(Vote(r), 1, ManifestEntry{0, "3dm", i, slots[s], "", ""});
      if (bribery) {
        std::swap(r[m - 3], r[m - 2]);
        emit(Vote(r), G, ManifestEntry{0, "g-vote", i, slots[s], "", ""});
      }
    }
  }

  // Losses each candidate needs against p from the setup votes.
  auto base = score_all(e, rule);
  const Integer budget = Integer(n + 2 * k);
  const Integer pf = t.alpha + 2 * t.gamma;
  std::vector<std::optional<Integer>> fin(m);
  for (std::size_t c = l.x0; c < l.s0; ++c) fin[c] = budget * t.beta + 2 * t.gamma;
  const Integer min_a2g = std::min(t.alpha, Integer(2 * t.gamma));
  for (std::size_t i = 0; i < n; ++i) {
    fin[l.s0 + i] = budget * t.beta + min_a2g;
    fin[l.sp0 + i] = budget * t.beta + t.alpha + t.gamma;
  }
  if (bribery) {
    const Integer h[3] = {t.alpha, t.beta, t.gamma};
    for (int j = 0; j < 3; ++j) fin[l.b0 + j] = pf + budget * (t.beta + h[j]);
  }
  out.setup_loss.assign(m, 0);
  const std::size_t dm[3] = {l.d0, l.d0 + 1, l.d0 + 2};
  const char* loss_name[3] = {"alpha", "beta", "gamma"};
  for (std::size_t c = 0; c < m; ++c) {
    if (!fin[c]) continue;
    Integer loss = (base.scores[c] - base.scores[l.p]) - (*fin[c] - pf);
    auto split = split_loss(loss, t);
    if (!split) return std::nullopt;
    out.setup_loss[c] = loss;
    for (int j = 0; j < 3; ++j) {
      auto cnt = to_int64((*split)[static_cast<std::size_t>(j)]);
      if (!cnt) throw CapExceeded("reduction", "setup vote count too large");
      Vote v = j == 0   ? tail_vote(m, l.p, dm[0], dm[1], c)
               : j == 1 ? tail_vote(m, l.p, dm[0], c, dm[1])
                        : tail_vote(m, l.p, c, dm[0], dm[1]);
      emit(v, static_cast<std::size_t>(*cnt), ManifestEntry{0, "setup", std::nullopt, "", l.names[c], loss_name[j]});
    }
  }

  // Dummies must stay below p even if every deleted vote helps them by alpha.
  {
    auto s = score_all(e, rule);
    Integer worst = s.scores[dm[0]];
    for (auto d : dm) worst = std::max(worst, s.scores[d]);
    Integer gap = worst + budget * t.alpha - s.scores[l.p];
    Integer per_round = t.alpha + t.beta + t.gamma;
    Integer rounds = gap < 0 ? Integer(0) : gap / per_round + 1;
    auto r = to_int64(rounds);
    if (!r) throw CapExceeded("reduction", "dummy padding too large");
    for (int j = 0; j < 3; ++j)
      emit(tail_vote(m, l.p, dm[j], dm[(j + 1) % 3], dm[(j + 2) % 3]), static_cast<std::size_t>(*r),
           ManifestEntry{0, "dummy", std::nullopt, "", "", ""});
  }

  out.instance = Instance{std::move(e), rule, CandidateId(l.p), n + 2 * k};
  return out;
}

}  // namespace detail

// Smallest G >= 1 with 12*G*gamma + 7*beta > 5*alpha.
inline std::size_t default_g(const TailParams& t) {
  std::size_t G = 1;
  while (Integer(12 * G) * t.gamma + 7 * t.beta <= 5 * t.alpha) ++G;
  return G;
}

// Input should be 3-regular (or F-regular). If some candidate would need a
// negative or unrealizable loss, private forced components are appended to
// the instance until every loss works out; `padding` reports how many.
inline ReductionOutput reduce_3dm(const ThreeDmInstance& inst, const TailParams& t, ReductionTarget target,
                                  std::optional<std::size_t> g_votes = std::nullopt) {
  inst.validate();
  t.validate();
  const bool bribery = target == ReductionTarget::Bribery;
  const std::size_t G = g_votes.value_or(default_g(t));
  if (bribery && G == 0) throw DomainError("G must be at least 1");
  for (std::size_t pad = 0; pad <= 64; ++pad) {
    auto src = pad == 0 ? inst : pad_with_forced_components(inst, pad);
    if (auto out = detail::try_build(src, t, bribery, G)) {
      out->padding = pad;
      return std::move(*out);
    }
  }
  throw DomainError("could not realize setup losses for these parameters");
}

inline ReductionOutput reduce_3dm_to_ccdv(const ThreeDmInstance& inst, const TailParams& t) {
  return reduce_3dm(inst, t, ReductionTarget::Ccdv);
}

inline ReductionOutput reduce_3dm_to_bribery(const ThreeDmInstance& inst, const TailParams& t,
                                             std::optional<std::size_t> g_votes = std::nullopt) {
  return reduce_3dm(inst, t, ReductionTarget::Bribery, g_votes);
}

// Cover tuples lose their x, y and z votes; every other tuple loses its s vote.
inline std::vector<std::size_t> deletions_for_cover(const ReductionOutput& r, const std::vector<std::size_t>& cover) {
  std::set<std::size_t> in_cover(cover.begin(), cover.end());
  std::vector<std::size_t> out;
  const auto& e = r.instance.election;
  for (std::size_t i = 0; i < r.tuple_group.size(); ++i) {
    if (in_cover.count(i))
      for (int s = 0; s < 3; ++s) out.push_back(e.first_voter_of_group(r.tuple_group[i][static_cast<std::size_t>(s)]));
    else
      out.push_back(e.first_voter_of_group(r.tuple_group[i][3]));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// A cover for the (padded) source instance, extended to padded components.
inline std::vector<std::size_t> extend_cover(const ReductionOutput& r, std::vector<std::size_t> cover) {
  const std::size_t orig = r.source.triples.size() - 3 * r.padding;
  for (std::size_t i = 0; i < r.padding; ++i) cover.push_back(orig + 3 * i);
  return cover;
}

inline SolverOutcome certificate_for_cover(const ReductionOutput& r, const std::vector<std::size_t>& cover) {
  SolverOutcome o;
  o.feasible = true;
  o.solver = "reduction:cover";
  auto del = deletions_for_cover(r, cover);
  if (r.target == ReductionTarget::Ccdv) {
    o.deleted = std::move(del);
    return o;
  }
  const std::size_t m = r.instance.election.num_candidates();
  const std::size_t b0 = r.instance.election.candidate("b_alpha").value;
  // Tail slots (-gamma, -beta, -alpha) go to b_gamma, b_beta, b_alpha.
  Vote v = detail::tail_vote(m, 0, b0 + 2, b0 + 1, b0);
  o.bribed = std::move(del);
  o.votes.assign(o.bribed.size(), v);
  return o;
}

}  // namespace scorectl

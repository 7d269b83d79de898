// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "scorectl.hpp"
#include "scorectl/fuzz.hpp"
#include "test_support.hpp"

using namespace scorectl;
using scorectl::test::sv;

namespace {

struct Verdict {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail += (detail.empty() ? "" : "; ") + what;
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ScoringVector tail(std::size_t m, long long b, long long a) {
  std::vector<Integer> c(m, 0);
  c[m - 2] = -b;
  c[m - 1] = -a;
  return ScoringVector(c);
}

std::vector<bool> mask(std::size_t n, const std::vector<std::size_t>& on) {
  std::vector<bool> m(n, false);
  for (auto i : on) m[i] = true;
  return m;
}

bool contains(const std::vector<std::size_t>& v, std::size_t x) { return std::find(v.begin(), v.end(), x) != v.end(); }

Verdict ac1() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  auto g = sv({0, 0, -2, -3});
  std::vector<Integer> sur{4, 3, 3};
  auto r = solve_manipulation_surplus(sur, g, 2);
  v.require(r.feasible, "k=2 infeasible");
  v.require(r.votes.size() == 2, "k=2 did not return two votes");
  for (const auto& u : r.votes) v.require(u.last() != CandidateId(1), "a vote puts c1 last");
  v.require(!solve_manipulation_surplus(sur, g, 1).feasible, "solver feasible at k=1");
  v.require(!brute_manipulation_surplus(sur, g, 1).has_value(), "oracle feasible at k=1");
  // Same scenario realized as an election.
  auto e = test::manipulation_example();
  auto full = sv({0, 0, 0, 0, -2, -3});
  auto re = solve_manipulation(e, full, e.candidate("p"), 2);
  v.require(re.feasible && is_winner(score_all(add_votes(e, re.votes), full), e.candidate("p")),
            "election form failed");
  for (const auto& u : re.votes) v.require(u.last() != e.candidate("c1"), "election form puts c1 last");
  v.require(!brute_manipulation(e, full, e.candidate("p"), 1).feasible, "election form oracle feasible at k=1");
  double s = seconds_since(t0);
  v.require(s < 1.0, "took " + std::to_string(s) + " s");
  return v;
}

Verdict ac2() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  auto e = test::bribery_example_one();
  Instance in{e, tail(7, 1, 3), e.candidate("p"), 1};
  auto vp = partition_last_two(e, in.preferred);
  auto r = solve_bribery(in);
  v.require(r.feasible && verify_bribery(in, r), "solver infeasible at k=1");
  v.require(r.bribed.size() == 1 && contains(vp.v3, r.bribed[0]), "solver did not bribe a V3 voter");
  BriberyOracleOptions v2;
  v2.allowed = mask(e.num_votes(), vp.v2);
  v.require(!brute_bribery(in, {}, v2).feasible, "V2-only bribery feasible");
  BriberyOracleOptions v3;
  v3.allowed = mask(e.num_votes(), vp.v3);
  v.require(brute_bribery(in, {}, v3).feasible, "V3-only bribery infeasible in oracle");
  double s = seconds_since(t0);
  v.require(s < 1.0, "took " + std::to_string(s) + " s");
  return v;
}

Verdict ac3() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  auto e = test::bribery_example_two();
  Instance in{e, tail(5, 2, 3), e.candidate("p"), 1};
  auto vp = partition_last_two(e, in.preferred);
  auto r = solve_bribery(in);
  v.require(r.feasible && verify_bribery(in, r), "solver infeasible at k=1");
  v.require(r.bribed == vp.v2, "solver did not bribe the V2 voter");
  BriberyOracleOptions only_v2;
  only_v2.allowed = mask(e.num_votes(), vp.v2);
  v.require(brute_bribery(in, {}, only_v2).feasible, "V2 bribe infeasible in oracle");
  std::string winners;
  for (auto i : vp.v1) {
    BriberyOracleOptions one;
    one.allowed = mask(e.num_votes(), {i});
    if (brute_bribery(in, {}, one).feasible) winners += (winners.empty() ? "" : ",") + std::to_string(i);
  }
  v.require(winners.empty(), "oracle finds successful single bribes of V1 voters " + winners +
                                 " (p rises to -8 and the tail fits the two remaining rivals)");
  double s = seconds_since(t0);
  v.require(s < 1.0, "took " + std::to_string(s) + " s");
  return v;
}

Verdict ac4() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  struct Want {
    Problem p;
    std::size_t m, n, k;
  };
  for (auto w : {Want{Problem::Manipulation, 5, 6, 3}, Want{Problem::Ccdv, 5, 7, 3}, Want{Problem::Bribery, 5, 6, 2}}) {
    auto lim = fuzz::default_limits(w.p);
    v.require(lim.max_candidates <= w.m && lim.max_votes <= w.n && lim.max_budget <= w.k,
              std::string(to_string(w.p)) + " limits exceed the required ranges");
    fuzz::Config cfg;
    cfg.problem = w.p;
    cfg.seed = 2024;
    cfg.count = 200;
    auto r = fuzz::run(cfg);
    v.require(r.summary.total == 200, "wrong case count");
    v.require(r.summary.disagreements == 0,
              std::string(to_string(w.p)) + ": " + std::to_string(r.summary.disagreements) + " disagreements");
  }
  double s = seconds_since(t0);
  v.require(s <= 600.0, "took " + std::to_string(s) + " s");
  return v;
}

FamilySpec fam(std::vector<long long> pre, long long mid, std::vector<long long> suf) {
  return FamilySpec{{pre.begin(), pre.end()}, Integer(mid), {suf.begin(), suf.end()}};
}

Verdict ac5() {
  Verdict v;
  std::vector<std::pair<std::string, FamilySpec>> easy = {
      {"3-veto", k_veto(3)},           {"1-approval", k_approval(1)},  {"2-approval", k_approval(2)},
      {"(0..0,-1,-2)", fam({}, 0, {-1, -2})}, {"(0..0,-1,-3)", fam({}, 0, {-1, -3})},
      {"trivial", fam({}, 0, {})},     {"1-veto", k_veto(1)},          {"2-veto", k_veto(2)},
      {"(2,1..1,0)", fam({2}, 1, {0})},
  };
  for (const auto& [name, f] : easy)
    for (auto p : {Problem::Ccdv, Problem::Bribery})
      v.require(classify(f, p).polynomial(), name + " not P for " + to_string(p));
  std::vector<std::pair<std::string, FamilySpec>> hard = {
      {"(1,1,1,0..0)", k_approval(3)},       {"(1..1,0,0,0,0)", k_veto(4)},
      {"(3,0..0,-2)", fam({3}, 0, {-2})},    {"(0..0,-1,-2,-4)", fam({}, 0, {-1, -2, -4})},
      {"(2,1,0..0)", fam({2, 1}, 0, {})},    {"(1,0..0,-2)", fam({1}, 0, {-2})},
      {"(2,0..0,-1,-1)", fam({2}, 0, {-1, -1})}, {"(3,1,0..0,-1)", fam({3, 1}, 0, {-1})},
      {"(2,1,0..0,-1)", fam({2, 1}, 0, {0, -1})}, {"(1,0..0,-1,-1,-2)", fam({1}, 0, {-1, -1, -2})},
      {"(1,1,0..0,-1)", fam({1, 1}, 0, {-1})}, {"(5,4,3,0..0)", fam({5, 4, 3}, 0, {})},
  };
  for (const auto& [name, f] : hard)
    for (auto p : {Problem::Ccdv, Problem::Bribery})
      v.require(!classify(f, p).polynomial(), name + " not NP-hard for " + to_string(p));
  v.require(!classify(GeneratorSpec(BordaFamily{}), Problem::Ccdv).polynomial(), "Borda not NP-hard");
  // Polarity agreement on every family with at most 7 distinct positions over 0..4.
  std::size_t mismatches = 0, total = 0;
  std::vector<long long> raw(7);
  std::function<void(std::size_t, long long)> rec = [&](std::size_t i, long long hi) {
    if (i == raw.size()) {
      for (std::size_t np = 0; np <= 2; ++np)
        for (std::size_t ns = 0; ns <= 3; ++ns) {
          FamilySpec f;
          f.prefix.assign(raw.begin(), raw.begin() + static_cast<long>(np));
          f.middle = raw[3];
          f.suffix.assign(raw.end() - static_cast<long>(ns), raw.end());
          ++total;
          if (classify(f, Problem::Ccdv).polynomial() != classify(f, Problem::Bribery).polynomial()) ++mismatches;
        }
      return;
    }
    for (long long x = 0; x <= hi; ++x) {
      raw[i] = x;
      rec(i + 1, x);
    }
  };
  rec(0, 4);
  v.require(mismatches == 0, std::to_string(mismatches) + " of " + std::to_string(total) + " specs differ");
  return v;
}

Verdict ac6() {
  Verdict v;
  std::mt19937_64 rng(6006);
  std::size_t bad = 0;
  for (int it = 0; it < 1000; ++it) {
    std::size_t m = 1 + rng() % 8;
    auto g = test::random_vector(rng, m, -20, 20);
    auto u = test::random_vote(rng, m);
    auto a = score_vote(u, g);
    auto b = score_vote(u.reversed(), g.dual());
    for (std::size_t c = 0; c < m; ++c)
      if (b.scores[c] != -a.scores[c]) ++bad;
  }
  v.require(bad == 0, std::to_string(bad) + " mismatching entries");
  return v;
}

ThreeDmInstance diagonal(std::size_t k) {
  auto inst = ThreeDmInstance::with_size(k);
  for (std::size_t i = 0; i < k; ++i)
    for (int c = 0; c < 3; ++c) inst.triples.push_back({i, i, i});
  return inst;
}

// Every instance with |X| = k whose elements occur at most three times.
void small_instances(std::size_t k, const std::function<void(const ThreeDmInstance&)>& f) {
  std::vector<Triple> all;
  for (std::size_t x = 0; x < k; ++x)
    for (std::size_t y = 0; y < k; ++y)
      for (std::size_t z = 0; z < k; ++z) all.push_back({x, y, z});
  std::vector<std::size_t> mult(all.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == all.size()) {
      auto inst = ThreeDmInstance::with_size(k);
      for (std::size_t t = 0; t < all.size(); ++t)
        for (std::size_t c = 0; c < mult[t]; ++c) inst.triples.push_back(all[t]);
      for (const auto& side : inst.degrees())
        for (auto d : side)
          if (d > 3) return;
      f(inst);
      return;
    }
    for (mult[i] = 0; mult[i] <= 3; ++mult[i]) rec(i + 1);
    mult[i] = 0;
  };
  rec(0);
}

Integer setup_loss_of(const ReductionOutput& r, CandidateId c) {
  const auto& e = r.instance.election;
  Integer loss = 0;
  for (const auto& me : r.manifest) {
    if (me.role != "setup") continue;
    const auto& g = e.groups()[me.group];
    loss += (r.instance.rule[g.vote.position_of(r.instance.preferred)] - r.instance.rule[g.vote.position_of(c)]) *
            Integer(g.count);
  }
  return loss;
}

Verdict ac7() {
  Verdict v;
  auto t0 = std::chrono::steady_clock::now();
  const TailParams ccdv_params{3, 2, 1};
  const TailParams bribery_params{2, 1, 1};
  // Loss table.
  for (std::size_t k = 1; k <= 3; ++k) {
    auto r = reduce_3dm_to_ccdv(diagonal(k), ccdv_params);
    const auto& e = r.instance.election;
    const auto& t = ccdv_params;
    const Integer kk(static_cast<long long>(k));
    v.require(r.padding == 0, "k=" + std::to_string(k) + " needed padding");
    for (std::size_t i = 1; i <= k; ++i)
      for (const char* s : {"x", "y", "z"})
        v.require(setup_loss_of(r, e.candidate(s + std::to_string(i))) == 7 * kk * t.beta - 2 * t.alpha,
                  std::string("loss of ") + s + std::to_string(i) + " at k=" + std::to_string(k));
    for (std::size_t i = 1; i <= 3 * k; ++i) {
      v.require(setup_loss_of(r, e.candidate("S" + std::to_string(i))) ==
                    7 * kk * t.beta - std::min(t.alpha, Integer(2 * t.gamma)),
                "loss of S" + std::to_string(i));
      v.require(setup_loss_of(r, e.candidate("S" + std::to_string(i) + "'")) == 7 * kk * t.beta - t.gamma,
                "loss of S" + std::to_string(i) + "'");
    }
  }
  // Forward soundness over normalized inputs with |X| <= 2.
  std::size_t covers = 0;
  for (std::size_t k = 1; k <= 2; ++k)
    small_instances(k, [&](const ThreeDmInstance& raw) {
      auto inst = normalize_3dm(raw).instance;
      auto cover = brute_3dm(inst);
      if (!cover || inst.k() == 0) return;
      ++covers;
      auto c = reduce_3dm_to_ccdv(inst, ccdv_params);
      v.require(verify_ccdv(c.instance, certificate_for_cover(c, extend_cover(c, *cover))), "ccdv certificate");
      auto b = reduce_3dm_to_bribery(inst, bribery_params, 1);
      v.require(verify_bribery(b.instance, certificate_for_cover(b, extend_cover(b, *cover))), "bribery certificate");
    });
  v.require(covers > 0, "no positive instances enumerated");
  // Equivalence at |X| = 1; the only 3-regular instance there is positive,
  // so the budget one below is checked as well.
  auto one = diagonal(1);
  auto c = reduce_3dm_to_ccdv(one, ccdv_params);
  v.require(brute_ccdv(c.instance, {}, CcdvOracleOptions{true}).feasible, "ccdv oracle misses the cover");
  auto ct = c.instance;
  --ct.budget;
  v.require(!brute_ccdv(ct, {}, CcdvOracleOptions{true}).feasible, "ccdv feasible below budget");
  auto b = reduce_3dm_to_bribery(one, bribery_params, 1);
  BriberyOracleOptions table;
  table.backend = ManipulationBackend::Table;
  v.require(brute_bribery(b.instance, {}, table).feasible, "bribery oracle misses the cover");
  auto bt = b.instance;
  --bt.budget;
  v.require(!brute_bribery(bt, {}, table).feasible, "bribery feasible below budget");
  double s = seconds_since(t0);
  v.require(s <= 300.0, "took " + std::to_string(s) + " s");
  return v;
}

Verdict ac8() {
  Verdict v;
  std::size_t count = 0;
  for (std::size_t k = 0; k <= 2; ++k)
    small_instances(k, [&](const ThreeDmInstance& in) {
      ++count;
      bool before = brute_3dm(in).has_value();
      auto n = normalize_3dm(in).instance;
      v.require(n.is_regular(3), "normalized instance not 3-regular");
      v.require(brute_3dm(n).has_value() == before, "normalization changed the answer");
      for (std::size_t f = 1; f <= 3; ++f) {
        auto g = to_f3dm(n, f);
        v.require(g.triples.size() == f * n.triples.size(), "to_f3dm size");
        v.require(brute_3dm(g).has_value() == before, "to_f3dm changed the answer");
      }
    });
  v.require(count == 490, "enumerated " + std::to_string(count) + " instances");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1 manipulation steep-tail example", ac1},
      {"AC2 bribery seven-candidate example", ac2},
      {"AC3 bribery eleven-voter example", ac3},
      {"AC4 oracle equivalence suites", ac4},
      {"AC5 dichotomy classifier", ac5},
      {"AC6 duality identity", ac6},
      {"AC7 reduction audit", ac7},
      {"AC8 3DM tooling", ac8},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    auto t0 = std::chrono::steady_clock::now();
    try {
      v = fn();
    } catch (const std::exception& e) {
      v.ok = false;
      v.detail = std::string("exception: ") + e.what();
    }
    double s = seconds_since(t0);
    std::printf("%s %s (%.2fs)%s%s\n", v.ok ? "PASS" : "FAIL", name, s, v.detail.empty() ? "" : " : ",
                v.detail.c_str());
    if (!v.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}

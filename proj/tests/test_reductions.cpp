#include <gtest/gtest.h>

#include <functional>
#include <random>

#include "scorectl.hpp"
#include "test_support.hpp"

using namespace scorectl;
using scorectl::test::sv;

namespace {

ThreeDmInstance diagonal(std::size_t k) {
  auto inst = ThreeDmInstance::with_size(k);
  for (std::size_t i = 0; i < k; ++i)
    for (int c = 0; c < 3; ++c) inst.triples.push_back({i, i, i});
  return inst;
}

// Loss of c against p summed over the setup votes, read off the election.
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

// All 3-regular instances reachable by normalizing inputs with |X| <= 2.
std::vector<ThreeDmInstance> regular_small_instances() {
  std::vector<ThreeDmInstance> out;
  std::set<std::vector<Triple>> seen;
  for (std::size_t k = 1; k <= 2; ++k) {
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
        auto n = normalize_3dm(inst).instance;
        if (n.k() > 0 && seen.insert(n.triples).second) out.push_back(n);
        return;
      }
      for (mult[i] = 0; mult[i] <= 3; ++mult[i]) rec(i + 1);
      mult[i] = 0;
    };
    rec(0);
  }
  return out;
}

}  // namespace

TEST(Reductions, RealizeScoresHitsTargets) {
  std::mt19937_64 rng(51);
  for (int it = 0; it < 60; ++it) {
    std::size_t m = 3 + rng() % 3;
    auto rule = test::random_vector(rng, m, -3, 3);
    if (rule[0] == rule[m - 1]) continue;
    Integer g = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) g = integer_gcd(g, rule[i] - rule[m - 1]);
    std::vector<Integer> targets;
    for (std::size_t c = 0; c + 1 < m; ++c) targets.push_back(g * Integer(static_cast<long long>(rng() % 7)));
    Integer margin = static_cast<long long>(rng() % 10);
    auto votes = realize_scores(targets, rule, margin);
    auto s = score_all(Election::from_votes(m, votes), rule);
    for (std::size_t a = 0; a + 1 < m; ++a) {
      for (std::size_t b = 0; b + 1 < m; ++b) EXPECT_EQ(s.scores[a] - s.scores[b], targets[a] - targets[b]);
      EXPECT_GE(s.scores[a] - s.scores[m - 1], margin);
    }
  }
}

TEST(Reductions, RealizeScoresRejectsBadInput) {
  EXPECT_THROW(realize_scores({Integer(1)}, sv({1, 0, 0})), DimensionError);
  EXPECT_THROW(realize_scores({Integer(0), Integer(1)}, sv({2, 2, 0})), DomainError);
  EXPECT_THROW(realize_scores({Integer(0), Integer(1)}, sv({1, 1, 1})), DomainError);
}

TEST(Reductions, CcdvLossTable) {
  const TailParams t{3, 2, 1};
  for (std::size_t k = 1; k <= 3; ++k) {
    auto r = reduce_3dm_to_ccdv(diagonal(k), t);
    ASSERT_EQ(r.padding, 0u);
    const auto& e = r.instance.election;
    const Integer kk(static_cast<long long>(k));
    const Integer x_loss = 7 * kk * t.beta - 2 * t.alpha;
    const Integer s_loss = 7 * kk * t.beta - std::min(t.alpha, Integer(2 * t.gamma));
    const Integer sp_loss = 7 * kk * t.beta - t.gamma;
    for (std::size_t i = 0; i < k; ++i) {
      for (const auto& n : {"x", "y", "z"}) {
        auto c = e.candidate(std::string(n) + std::to_string(i + 1));
        EXPECT_EQ(setup_loss_of(r, c), x_loss) << n << i + 1 << " k=" << k;
        EXPECT_EQ(r.setup_loss[c.value], x_loss);
      }
    }
    for (std::size_t i = 0; i < 3 * k; ++i) {
      auto s = e.candidate("S" + std::to_string(i + 1));
      auto sp = e.candidate("S" + std::to_string(i + 1) + "'");
      EXPECT_EQ(setup_loss_of(r, s), s_loss);
      EXPECT_EQ(setup_loss_of(r, sp), sp_loss);
    }
    EXPECT_EQ(r.instance.budget, 5 * k);
  }
}

TEST(Reductions, LossTableOtherParameters) {
  for (auto t : {TailParams{4, 2, 1}, TailParams{5, 3, 2}, TailParams{2, 1, 1}}) {
    auto r = reduce_3dm_to_ccdv(diagonal(2), t);
    if (r.padding != 0) continue;
    const auto& e = r.instance.election;
    EXPECT_EQ(setup_loss_of(r, e.candidate("x1")), 14 * t.beta - 2 * t.alpha);
    EXPECT_EQ(setup_loss_of(r, e.candidate("S1")), 14 * t.beta - std::min(t.alpha, Integer(2 * t.gamma)));
    EXPECT_EQ(setup_loss_of(r, e.candidate("S1'")), 14 * t.beta - t.gamma);
  }
}

TEST(Reductions, ManifestLayout) {
  for (auto target : {ReductionTarget::Ccdv, ReductionTarget::Bribery}) {
    auto r = reduce_3dm(diagonal(2), TailParams{3, 2, 1}, target);
    std::size_t tuple_votes = 0, g_votes = 0, setup = 0, dummy = 0;
    for (const auto& me : r.manifest) {
      if (me.role == "3dm") ++tuple_votes;
      if (me.role == "g-vote") ++g_votes;
      if (me.role == "setup") ++setup;
      if (me.role == "dummy") ++dummy;
      ASSERT_LT(me.group, r.instance.election.groups().size());
    }
    EXPECT_EQ(tuple_votes, 12 * r.source.k());
    EXPECT_EQ(g_votes, target == ReductionTarget::Bribery ? 12 * r.source.k() : 0u);
    EXPECT_GT(setup, 0u);
    EXPECT_EQ(dummy, 3u);
    EXPECT_EQ(r.manifest.size(), r.instance.election.groups().size());
    // p does not win before any deletion.
    EXPECT_FALSE(is_winner(score_all(r.instance.election, r.instance.rule), r.instance.preferred));
  }
  EXPECT_THROW(reduce_3dm_to_ccdv(diagonal(1), TailParams{1, 1, 1}), DomainError);
  EXPECT_THROW(reduce_3dm_to_bribery(diagonal(1), TailParams{2, 1, 1}, 0), DomainError);
}

TEST(Reductions, DefaultG) {
  EXPECT_EQ(default_g(TailParams{2, 1, 1}), 1u);
  EXPECT_EQ(default_g(TailParams{10, 1, 1}), 4u);  // 12G + 7 > 50
}

TEST(Reductions, ForwardSoundnessSmallInstances) {
  auto insts = regular_small_instances();
  ASSERT_GT(insts.size(), 3u);
  std::size_t positives = 0;
  for (const auto& inst : insts) {
    auto cover = brute_3dm(inst);
    if (!cover) continue;
    ++positives;
    for (auto target : {ReductionTarget::Ccdv, ReductionTarget::Bribery}) {
      for (auto t : {TailParams{3, 2, 1}, TailParams{2, 1, 1}}) {
        auto r = reduce_3dm(inst, t, target);
        auto cert = certificate_for_cover(r, extend_cover(r, *cover));
        if (target == ReductionTarget::Ccdv) {
          ASSERT_EQ(cert.deleted.size(), r.instance.budget);
          ASSERT_TRUE(verify_ccdv(r.instance, cert));
        } else {
          ASSERT_EQ(cert.bribed.size(), r.instance.budget);
          ASSERT_TRUE(verify_bribery(r.instance, cert));
        }
      }
    }
  }
  EXPECT_GT(positives, 0u);
}

// At |X| = 1 the only 3-regular instance is the positive one; search the
// generated instances exhaustively at the budget and one below it.
TEST(Reductions, SingleElementEquivalence) {
  auto inst = diagonal(1);
  ASSERT_TRUE(brute_3dm(inst));
  auto c = reduce_3dm_to_ccdv(inst, TailParams{3, 2, 1});
  EXPECT_TRUE(brute_ccdv(c.instance, {}, CcdvOracleOptions{true}).feasible);
  auto tight = c.instance;
  tight.budget -= 1;
  EXPECT_FALSE(brute_ccdv(tight, {}, CcdvOracleOptions{true}).feasible);

  auto b = reduce_3dm_to_bribery(inst, TailParams{2, 1, 1}, 1);
  BriberyOracleOptions table;
  table.backend = ManipulationBackend::Table;
  EXPECT_TRUE(brute_bribery(b.instance, {}, table).feasible);
  auto btight = b.instance;
  btight.budget -= 1;
  EXPECT_FALSE(brute_bribery(btight, {}, table).feasible);
}

#include <gtest/gtest.h>

#include <random>

#include "scorectl.hpp"
#include "test_support.hpp"

using namespace scorectl;
using scorectl::test::sv;

namespace {

ScoringVector tail(std::size_t m, long long b, long long a) {
  std::vector<Integer> c(m, 0);
  c[m - 2] = -b;
  c[m - 1] = -a;
  return ScoringVector(c);
}

}  // namespace

TEST(Ccdv, PluralityDeletesLeaderVote) {
  Election e({"p", "a", "b"}, {});
  e.add(test::vote(e, {"a", "p", "b"}), 2);
  e.add(test::vote(e, {"p", "a", "b"}));
  Instance in{e, sv({1, 0, 0}), e.candidate("p"), 1};
  auto r = solve_ccdv(in);
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.solver, "ccdv:plurality");
  EXPECT_EQ(r.deleted, (std::vector<std::size_t>{0}));
  EXPECT_TRUE(verify_ccdv(in, r));
  in.budget = 0;
  EXPECT_FALSE(solve_ccdv(in).feasible);
}

TEST(Ccdv, PluralityRivalTwoAheadNeedsTwo) {
  Election e({"p", "a"}, {});
  e.add(test::vote(e, {"a", "p"}), 3);
  e.add(test::vote(e, {"p", "a"}));
  Instance in{e, sv({1, 0}), CandidateId(0), 1};
  EXPECT_FALSE(solve_ccdv(in).feasible);
  EXPECT_FALSE(brute_ccdv(in).feasible);
  in.budget = 2;
  EXPECT_TRUE(solve_ccdv(in).feasible);
}

TEST(Ccdv, LastTwoNeverDeletesOtherVoters) {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int it = 0; it < 300; ++it) {
    std::size_t m = 3 + rng() % 3;
    auto e = test::random_election(rng, m, 2 + rng() % 6);
    Instance in{e, tail(m, 1, 2), CandidateId(0), 1 + rng() % 3};
    auto r = solve_ccdv(in);
    if (!r.feasible) continue;
    ++checked;
    for (auto i : r.deleted) EXPECT_GE(e.voter(i).position_of(CandidateId(0)) + 2, m);
  }
  EXPECT_GT(checked, 0);
}

TEST(Ccdv, DispatchAndNotes) {
  Election e(4);
  e.add(Vote::identity(4).reversed());
  EXPECT_EQ(solve_ccdv(Instance{e, sv({3, 3, 2, 0}), CandidateId(0), 1}).solver, "ccdv:last-two");
  EXPECT_EQ(solve_ccdv(Instance{e, sv({4, 1, 1, 1}), CandidateId(0), 1}).solver, "ccdv:plurality");
  auto r = solve_ccdv(Instance{e, sv({3, 2, 1, 0}), CandidateId(0), 1});
  EXPECT_EQ(r.solver, "oracle:ccdv");
  ASSERT_EQ(r.notes.size(), 1u);
  // 3-approval at seven candidates is on the hard side.
  Election big(7);
  big.add(Vote::identity(7));
  auto h = solve_ccdv(Instance{big, sv({1, 1, 1, 0, 0, 0, 0}), CandidateId(6), 1});
  ASSERT_EQ(h.notes.size(), 1u);
  EXPECT_NE(h.notes[0].find("NP-hard"), std::string::npos);
  EXPECT_THROW(solve_ccdv_plurality(Instance{e, sv({3, 2, 1, 0}), CandidateId(0), 1}), UnsupportedRule);
  EXPECT_THROW(solve_ccdv_last_two(Instance{e, sv({3, 2, 1, 0}), CandidateId(0), 1}), UnsupportedRule);
}

TEST(Ccdv, OneCandidateAndEmptyElection) {
  Election one(1);
  one.add(Vote::identity(1), 2);
  EXPECT_TRUE(solve_ccdv(Instance{one, sv({0}), CandidateId(0), 0}).feasible);
  Election none(3);
  EXPECT_TRUE(solve_ccdv(Instance{none, sv({1, 0, 0}), CandidateId(2), 0}).feasible);
}

// Deleting votes under g moves scores the same way as adding their
// reversals under the dual rule.
TEST(Ccdv, DeletionMirrorsDualAddition) {
  std::mt19937_64 rng(10);
  for (int it = 0; it < 200; ++it) {
    std::size_t m = 2 + rng() % 4;
    auto e = test::random_election(rng, m, 1 + rng() % 6);
    auto g = test::random_vector(rng, m, -3, 3);
    auto all = e.expanded();
    std::vector<Vote> del, rev;
    for (const auto& v : all)
      if (rng() % 2) {
        del.push_back(v);
        rev.push_back(v.reversed());
      }
    auto before = score_all(e, g);
    auto after = score_all(delete_votes(e, del), g);
    auto added = score_all(Election::from_votes(m, rev), g.dual());
    for (std::size_t c = 0; c < m; ++c) EXPECT_EQ(after.scores[c] - before.scores[c], added.scores[c]);
  }
}

namespace {

void agree(std::uint64_t seed, int count, bool plurality) {
  std::mt19937_64 rng(seed);
  int yes = 0;
  for (int it = 0; it < count; ++it) {
    std::size_t m = 2 + rng() % 4;
    auto e = test::random_election(rng, m, rng() % 8);
    ScoringVector g;
    if (plurality) {
      std::vector<Integer> c(m, 0);
      c[0] = 1;
      g = ScoringVector(c);
    } else {
      long long b = static_cast<long long>(rng() % 4);
      g = tail(m, b, std::max<long long>(b, 1) + static_cast<long long>(rng() % 3));
    }
    Instance in{e, g, CandidateId(rng() % m), rng() % 4};
    auto s = solve_ccdv(in);
    ASSERT_EQ(s.feasible, brute_ccdv(in).feasible) << "seed " << seed << " case " << it;
    if (s.feasible) {
      ASSERT_TRUE(verify_ccdv(in, s));
      ++yes;
    }
  }
  EXPECT_GT(yes, 0);
  EXPECT_LT(yes, count);
}

}  // namespace

TEST(Ccdv, PluralityAgreesWithOracle) { agree(31, 500, true); }
TEST(Ccdv, LastTwoAgreesWithOracle) { agree(32, 500, false); }

TEST(Ccdv, FeasibleCcdvImpliesFeasibleBribery) {
  std::mt19937_64 rng(33);
  for (int it = 0; it < 200; ++it) {
    std::size_t m = 2 + rng() % 3;
    auto e = test::random_election(rng, m, rng() % 6);
    Instance in{e, test::random_vector(rng, m, -2, 2), CandidateId(0), rng() % 3};
    if (brute_ccdv(in).feasible) {
      ASSERT_TRUE(brute_bribery(in).feasible);
    }
  }
}

#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <vector>

#include "rsofs/error.hpp"
#include "rsofs/rl.hpp"
#include "test_support.hpp"

using namespace rsofs;

namespace {
const auto S = FeatureMask::from_string;
}

TEST(Reward, AccuracyGain) {
  EXPECT_DOUBLE_EQ(reward({0.8, 0.9, 3, 2}), 0.8);
  EXPECT_DOUBLE_EQ(reward({0.8, 0.9, 1, 5}), 0.8);
}

TEST(Reward, AccuracyLoss) { EXPECT_NEAR(reward({0.9, 0.8, 2, 3}), -0.1, 1e-15); }

TEST(Reward, CountTieBreak) {
  EXPECT_DOUBLE_EQ(reward({0.8, 0.8, 5, 4}), 0.4);
  EXPECT_DOUBLE_EQ(reward({0.8, 0.8, 4, 5}), -0.4);
  EXPECT_EQ(reward({0.8, 0.8, 4, 4}), 0.0);
}

TEST(Reward, CountBranchIsAntisymmetric) {
  for (int a = 0; a <= 10; ++a) {
    for (std::size_t x = 1; x <= 5; ++x) {
      for (std::size_t y = 1; y <= 5; ++y) {
        const double acc = a / 10.0;
        EXPECT_EQ(reward({acc, acc, x, y}), -reward({acc, acc, y, x}));
      }
    }
  }
}

TEST(QUpdate, EmptyTableUnitReward) {
  QTable t(4);
  q_update(t, S("0101"), 2, 1.0, S("0111"), RLParams{});
  EXPECT_NEAR(t.get(S("0101"), 2), 0.9, 1e-15);
}

TEST(QUpdate, CollapsesToRewardWithLr1Alpha0) {
  RLParams p;
  p.lr = 1.0;
  p.alpha = 0.0;
  QTable t(3);
  t.set(S("101"), 1, 7.5);
  t.set(S("111"), 0, 3.0);
  q_update(t, S("101"), 1, -0.25, S("111"), p);
  EXPECT_EQ(t.get(S("101"), 1), -0.25);
}

TEST(QUpdate, HandEvaluated) {
  QTable t(2);
  t.set(S("10"), 0, 0.5);
  t.set(S("11"), 1, 1.0);
  q_update(t, S("10"), 0, 0.0, S("11"), RLParams{});
  EXPECT_NEAR(t.get(S("10"), 0), 0.25, 1e-15);
}

TEST(QUpdate, TouchesExactlyOneCell) {
  Rng rng(3);
  QTable t(5);
  for (int i = 0; i < 30; ++i) {
    t.set(fixtures::mask_from_index(1 + rng.uniform_index(31), 5), rng.uniform_index(5),
          rng.uniform01());
  }
  for (int trial = 0; trial < 50; ++trial) {
    const auto before = t;
    const auto s = fixtures::mask_from_index(1 + rng.uniform_index(31), 5);
    const auto a = rng.uniform_index(5);
    q_update(t, s, a, rng.uniform01() - 0.5, fixtures::mask_from_index(1 + rng.uniform_index(31), 5),
             RLParams{});
    for (std::size_t idx = 1; idx < 32; ++idx) {
      const auto m = fixtures::mask_from_index(idx, 5);
      for (std::size_t b = 0; b < 5; ++b) {
        if (m == s && b == a) continue;
        ASSERT_EQ(t.get(m, b), before.get(m, b));
      }
    }
  }
}

TEST(QUpdate, LatestRewardWinsWhenLr1Alpha0) {
  RLParams p;
  p.lr = 1.0;
  p.alpha = 0.0;
  Rng rng(8);
  QTable t(3);
  for (int i = 0; i < 100; ++i) {
    const double r = rng.uniform01() * 2.0 - 1.0;
    q_update(t, S("011"), 0, r, S("111"), p);
    ASSERT_EQ(t.get(S("011"), 0), r);
  }
}

TEST(QTable, UnvisitedCellsReadZero) {
  QTable t(3);
  EXPECT_EQ(t.get(S("101"), 2), 0.0);
  EXPECT_EQ(t.max_value(S("101")), 0.0);
  EXPECT_EQ(t.size(), 0u);
}

TEST(QTable, MaxValueIncludesUnwrittenZeros) {
  QTable t(3);
  t.set(S("101"), 0, -1.0);
  t.set(S("101"), 1, -2.0);
  EXPECT_EQ(t.max_value(S("101")), 0.0);
  t.set(S("101"), 2, -0.5);
  EXPECT_EQ(t.max_value(S("101")), -0.5);
}

TEST(QTable, DumpIsSorted) {
  QTable t(12);
  t.set(S("110"), 10, 0.5);
  t.set(S("011"), 2, 0.25);
  t.set(S("110"), 2, -1.0);
  EXPECT_EQ(t.dump(), "011,2,0.25\n110,2,-1\n110,10,0.5\n");
}

TEST(SelectAction, GreedyArgmax) {
  QTable t(2);
  t.set(S("11"), 0, 0.1);
  t.set(S("11"), 1, 0.9);
  Rng rng(1);
  EXPECT_EQ(select_action(t, S("11"), 0.0, rng), 1u);
}

TEST(SelectAction, TieGoesToLowestLegalIndex) {
  QTable t(3);
  Rng rng(1);
  EXPECT_EQ(select_action(t, S("011"), 0.0, rng), 0u);
  EXPECT_EQ(select_action(t, S("100"), 0.0, rng), 1u);
}

TEST(SelectAction, ExplorationIsUniformOverLegalActions) {
  QTable t(4);
  Rng rng(42);
  std::array<int, 4> counts{};
  for (int i = 0; i < 10000; ++i) ++counts[select_action(t, S("1010"), 1.0, rng)];
  for (int c : counts) EXPECT_NEAR(c, 2500, 150);

  std::array<int, 4> restricted{};
  for (int i = 0; i < 3000; ++i) ++restricted[select_action(t, S("0100"), 1.0, rng)];
  EXPECT_EQ(restricted[1], 0);
}

TEST(SelectAction, GreedyIsPure) {
  Rng fill(6);
  QTable t(6);
  for (int i = 0; i < 40; ++i) {
    t.set(fixtures::mask_from_index(1 + fill.uniform_index(63), 6), fill.uniform_index(6),
          fill.uniform01());
  }
  for (std::size_t idx = 1; idx < 64; ++idx) {
    const auto m = fixtures::mask_from_index(idx, 6);
    Rng a(1), b(999);
    EXPECT_EQ(select_action(t, m, 0.0, a), select_action(t, m, 0.0, b));
  }
}

TEST(SelectAction, NoLegalAction) {
  QTable t(1);
  Rng rng(1);
  try {
    select_action(t, S("1"), 0.5, rng);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoLegalAction);
  }
}

TEST(SelectAction, ScalingRewardsKeepsGreedyChoice) {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    QTable a(4), b(4);
    const double scale = 0.1 + rng.uniform01() * 10.0;
    for (int step = 0; step < 30; ++step) {
      const auto s = fixtures::mask_from_index(1 + rng.uniform_index(15), 4);
      const auto next = fixtures::mask_from_index(1 + rng.uniform_index(15), 4);
      const auto act = rng.uniform_index(4);
      const double r = rng.uniform01() - 0.5;
      q_update(a, s, act, r, next, RLParams{});
      q_update(b, s, act, r * scale, next, RLParams{});
    }
    for (std::size_t idx = 1; idx < 16; ++idx) {
      const auto m = fixtures::mask_from_index(idx, 4);
      Rng r1(0), r2(0);
      EXPECT_EQ(select_action(a, m, 0.0, r1), select_action(b, m, 0.0, r2));
    }
  }
}

TEST(ApplyAction, Toggles) {
  EXPECT_EQ(apply_action(S("0101"), 0).to_string(), "1101");
  EXPECT_EQ(apply_action(S("0101"), 1).to_string(), "0001");
}

TEST(ApplyAction, Involution) {
  for (std::size_t idx = 1; idx < 32; ++idx) {
    const auto m = fixtures::mask_from_index(idx, 5);
    for (std::size_t a = 0; a < 5; ++a) {
      auto once = m;
      once.flip(a);
      if (once.none()) continue;
      EXPECT_EQ(apply_action(apply_action(m, a), a), m);
    }
  }
}

TEST(ApplyAction, RefusesToEmpty) {
  try {
    apply_action(S("0100"), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyMaskResult);
  }
}

TEST(DiscountedReturn, MatchesDirectSum) {
  const std::vector<double> r{0.8, -0.1, 0.4};
  for (double alpha : {0.0, 0.2, 0.5, 1.0}) {
    const double direct = r[0] + alpha * r[1] + std::pow(alpha, 2) * r[2];
    EXPECT_NEAR(discounted_return(r, alpha), direct, 1e-12);
  }
}

TEST(RLParams, Validation) {
  RLParams p;
  EXPECT_NO_THROW(p.validate());
  p.beta = 1.5;
  EXPECT_THROW(p.validate(), Error);
}

#include <gtest/gtest.h>

#include "reward_table.h"
#include "scoring_checks.h"
#include "tokbench/errors.h"
#include "tokbench/generators.h"

using namespace tokbench;
using namespace tokbench::testing;

TEST(FineReward, HandComputedTable) {
  const auto rows = reward_table();
  ASSERT_GE(rows.size(), 30u);
  for (const auto& r : rows) EXPECT_NEAR(fine_reward(r.input).value, r.expected, 1e-9) << r.name;
}

TEST(FineReward, ShuffleRowsUseTheScorerAdjacencyCount) {
  for (const auto& r : reward_table()) {
    if (r.input.t != EvalType::shuffle) continue;
    std::vector<std::string> a = r.input.T1, b = r.input.T2;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a == b) EXPECT_EQ(adjacent_pair_count(r.input.T1, r.input.T2), r.input.A) << r.name;
  }
}

TEST(FineReward, LengthMonotoneNumberStrictlyDecreasing) {
  double prev = 2.0;
  for (int d = 0; d <= 30; ++d) {
    const double v = fine_reward(length_in(20, 20 + d)).value;
    EXPECT_LE(v, prev);
    EXPECT_EQ(v, fine_reward(length_in(20, 20 - std::min(d, 20))).value) << d;
    prev = v;
  }
  prev = 2.0;
  for (int d = 0; d <= 30; ++d) {
    const double v = fine_reward(number_in(7, 7 + d)).value;
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Reward, SampleLevelExamples) {
  TaskInstance split;
  split.evaluation_type = EvalType::split;
  split.label = Json::array({Json::array({"穴", "九"})});
  EXPECT_DOUBLE_EQ(reward_for_sample(RewardMode::fine, split, "<answer>穴</answer>").value, 0.5);
  EXPECT_DOUBLE_EQ(reward_for_sample(RewardMode::coarse, split, "<answer>穴</answer>").value, 0.0);

  TaskInstance len;
  len.evaluation_type = EvalType::length;
  len.language = Language::en;
  len.label = "0";
  len.metadata = {{"subtask", "generation"}, {"target_length", 0}};
  EXPECT_DOUBLE_EQ(reward_for_sample(RewardMode::fine, len, "<answer></answer>").value, 1.0);

  len.metadata["target_length"] = 5;
  len.label = "5";
  EXPECT_DOUBLE_EQ(reward_for_sample(RewardMode::fine, len, "<answer>one two three four</answer>").value, 0.8);
  EXPECT_DOUBLE_EQ(reward_for_sample(RewardMode::coarse, len, "<answer>one two three four</answer>").value, 0.0);
}

TEST(Reward, CoarseOneImpliesFineOneOnGolden) {
  for (const auto& g : load_golden()) {
    const double c = coarse_reward(g.instance, g.output);
    const auto f = reward_for_sample(RewardMode::fine, g.instance, g.output);
    EXPECT_GE(f.value, 0.0);
    EXPECT_LE(f.value, 1.0);
    EXPECT_EQ(c, g.correct ? 1.0 : 0.0) << g.name;
    if (c == 1.0) EXPECT_DOUBLE_EQ(f.value, 1.0) << g.name;
  }
}

TEST(Reward, ModeNames) {
  EXPECT_EQ(parse_reward_mode("reward-fine"), RewardMode::fine);
  EXPECT_EQ(parse_reward_mode("coarse"), RewardMode::coarse);
  EXPECT_THROW(parse_reward_mode("medium"), DomainError);
}

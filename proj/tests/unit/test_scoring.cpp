#include <gtest/gtest.h>

#include "scoring_checks.h"
#include "tokbench/errors.h"

using namespace tokbench;
using namespace tokbench::testing;

TEST(Extract, LastTagPairWins) {
  EXPECT_EQ(extract_answer("reasoning... <answer>5</answer>"), "5");
  EXPECT_EQ(extract_answer("<answer>4</answer> wait <answer> 5 </answer>"), "5");
  EXPECT_EQ(extract_answer("<answer>a <answer>b</answer>"), "b");
}

TEST(Extract, BoldFallbackAndEmpty) {
  EXPECT_EQ(extract_answer("the result is **cab**"), "cab");
  EXPECT_EQ(extract_answer("**x** then **y**"), "y");
  EXPECT_EQ(extract_answer("no tags anywhere"), "");
  EXPECT_EQ(extract_answer("<answer>unterminated"), "");
  EXPECT_EQ(extract_answer(""), "");
}

TEST(Numbers, ScansSignedDecimals) {
  EXPECT_EQ(numeric_literals("x -3 and 4.5, then 6."), (std::vector<double>{-3, 4.5, 6}));
  EXPECT_TRUE(numeric_literals("three").empty());
}

TEST(Numbers, LastPredictedNumberAgainstFirstLabelNumber) {
  EXPECT_TRUE(match_number("5", "4 or maybe 5").correct);
  EXPECT_FALSE(match_number("5", "6").correct);
  EXPECT_FALSE(match_number("3", "three").correct);
  EXPECT_TRUE(match_number("5", "5.0").correct);
}

TEST(Shuffle, AdjacencyAndMultisetRules) {
  const std::vector<std::string> orig{"a", "b", "c", "d"};
  EXPECT_TRUE(shuffle_tokens(orig, "c a d b", Language::en).correct);
  EXPECT_FALSE(shuffle_tokens(orig, "b a c d", Language::en).correct);
  EXPECT_FALSE(shuffle_tokens(orig, "c a d", Language::en).correct);
  EXPECT_FALSE(shuffle_tokens(orig, "", Language::en).correct);
}

TEST(Shuffle, EquivalentToBruteForce) {
  const auto res = reord_equivalence(50, 1234);
  EXPECT_EQ(res.bases, 50);
  EXPECT_GT(res.predictions, 1000);
  for (const auto& m : res.mismatches) ADD_FAILURE() << m;
}

TEST(Split, ContainmentOfSomeOption) {
  EXPECT_TRUE(split_components({{"穴", "九"}}, "穴 和 九").correct);
  EXPECT_TRUE(split_components({{"irrit", "ati", "on"}}, "irrit + ati + on").correct);
  EXPECT_FALSE(split_components({{"穴", "九"}}, "小, 糸").correct);
  EXPECT_TRUE(split_components({{"a", "b"}, {"穴", "九"}}, "九穴").correct);
}

TEST(MatchAnswer, NormalizedSubstring) {
  EXPECT_TRUE(match_answer({"CAB"}, "C A B").correct);
  EXPECT_TRUE(match_answer({"쏠"}, "ㅆ + ㅗ + ㄹ = 쏠").correct);
  EXPECT_FALSE(match_answer({"symbol"}, "latin").correct);
  EXPECT_TRUE(match_answer({"x", "동물원"}, "동물원").correct);
}

TEST(Dispatch, UntaggedOutputIsIncorrect) {
  TaskInstance inst;
  inst.evaluation_type = EvalType::number;
  inst.label = "3";
  EXPECT_TRUE(evaluate_sample(inst, "<answer>3</answer>").correct);
  const auto out = evaluate_sample(inst, "3");
  EXPECT_FALSE(out.correct);
  EXPECT_EQ(out.extracted, "");
}

TEST(Dispatch, ExtraReasoningOutsideTagsKeepsVerdict) {
  for (const auto& g : load_golden()) {
    if (!g.correct) continue;
    EXPECT_TRUE(evaluate_sample(g.instance, "Some preamble text.\n" + g.output + "\nDone.").correct) << g.name;
  }
}

TEST(Golden, EveryCaseReproducesItsVerdict) {
  const auto cases = load_golden();
  ASSERT_GE(cases.size(), 60u);
  for (const auto& g : cases) {
    const auto out = evaluate_sample(g.instance, g.output);
    EXPECT_EQ(out.correct, g.correct) << g.name << " extracted=\"" << out.extracted << "\" " << out.detail;
  }
}

TEST(Golden, CoversCaseStudies) {
  std::set<std::string> names;
  for (const auto& g : load_golden()) names.insert(g.name);
  for (const char* required : {"split jiu correct", "split jiu wrong parts", "diff only sentence",
                               "dot bang symbol", "dot bang latin", "letter count five, answered six",
                               "combine ko correct"}) {
    EXPECT_TRUE(names.count(required)) << required;
  }
}

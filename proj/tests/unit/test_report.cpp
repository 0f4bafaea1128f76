#include <fstream>

#include <gtest/gtest.h>

#include "test_paths.h"
#include "tokbench/report.h"

using namespace tokbench;
using namespace tokbench::testing;

namespace {

Json tables() {
  std::ifstream in(fixture("reference_tables.json"));
  return Json::parse(in);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome outcome(Task t, Language l, bool ok, std::optional<int> len = {}, std::string sub = "") {
  return {"x", t, l, ok, len, std::move(sub)};
}

}  // namespace

TEST(Advantage, EnglishAdvantageOfTopModel) {
  const auto rows = tables()["language_accuracy"]["rows"];
  const auto& o3 = rows[0];
  ASSERT_EQ(o3["model"], "o3");
  const auto a = language_advantage(o3["en"], o3["zh"], o3["ko"]);
  EXPECT_NEAR(a.EA, tables()["expected"]["o3_english_advantage"].get<double>(), 0.01);
}

TEST(Advantage, SumsToZeroForEveryRow) {
  const auto t = tables();
  for (const auto& r : t["language_accuracy"]["rows"]) {
    const auto a = language_advantage(r["en"], r["zh"], r["ko"]);
    EXPECT_NEAR(a.EA + a.CA + a.KA, 0.0, 1e-9) << r["model"];
    EXPECT_DOUBLE_EQ(a.EA, r["en"].get<double>() - (r["zh"].get<double>() + r["ko"].get<double>()) / 2);
  }
}

TEST(Uniformity, PopulationStandardDeviation) {
  EXPECT_NEAR(uniformity(0, 0, 30), 14.142135623730951, 1e-12);
  EXPECT_DOUBLE_EQ(uniformity(5, 5, 5), 0.0);
}

TEST(TaskAverage, ReproducesPrintedAverageThroughSummary) {
  const auto t = tables()["task_accuracy"];
  const auto& cols = t["columns"];
  for (const auto& row : t["rows"]) {
    ModelSummary s;
    s.model = row["model"];
    for (std::size_t i = 0; i < cols.size(); ++i) {
      s.by_task[cols[i]] = Tally{10000, static_cast<int>(std::lround(row["values"][i].get<double>() * 100))};
    }
    ASSERT_TRUE(s.task_average());
    EXPECT_NEAR(*s.task_average(), row["avg"].get<double>(), 0.01) << s.model;
  }
}

TEST(Correlation, PrintedOutputLengthTable) {
  const auto t = tables();
  std::vector<double> len, acc;
  for (const auto& r : t["output_length"]["rows"]) {
    len.push_back(r["mean_chars"]);
    acc.push_back(r["accuracy"]);
  }
  ASSERT_EQ(len.size(), 26u);
  // Value pinned from the printed table; differs from the printed coefficient.
  EXPECT_NEAR(*pearson(len, acc), 0.0567272, 1e-6);
}

TEST(Correlation, PerfectAndDegenerate) {
  EXPECT_NEAR(*pearson({1, 2, 3}, {2, 4, 6}), 1.0, 1e-12);
  EXPECT_NEAR(*pearson({1, 2, 3}, {3, 2, 1}), -1.0, 1e-12);
  EXPECT_FALSE(pearson({1, 1, 1}, {1, 2, 3}));
  EXPECT_FALSE(pearson({1}, {1}));
}

TEST(Welch, MatchesReferenceImplementation) {
  const auto r = welch_t_test({1, 2, 3, 4, 5, 6, 7}, {2, 4, 6, 8, 10, 12, 14, 16});
  EXPECT_NEAR(r.t, -2.6111648393354674, 1e-9);
  ASSERT_TRUE(r.p_value);
  EXPECT_NEAR(*r.p_value, 0.026215143973405103, 1e-9);
  const auto s = welch_t_test(0.5, 0.25, 100, 0.6, 0.24, 120);
  EXPECT_NEAR(s.t, -1.4907119849998594, 1e-9);
  EXPECT_NEAR(*s.p_value, 0.13754254801524982, 1e-9);
  EXPECT_FALSE(welch_t_test({1}, {2, 3}).p_value);
}

TEST(SampleValidity, MaeAndPerTaskTests) {
  std::map<std::string, std::vector<bool>> full = {{"A", {1, 1, 0, 0}}, {"B", {1, 1, 1, 0}}, {"C", {0, 0, 0, 1}}};
  std::map<std::string, std::vector<bool>> sample = {{"A", {1, 0}}, {"B", {1, 1}}, {"C", {0, 0}}};
  const auto v = sample_validity(full, sample);
  // |0.5-0.5| + |0.75-1| + |0.25-0| over three tasks.
  EXPECT_NEAR(v.mae, (0.0 + 0.25 + 0.25) / 3, 1e-12);
  ASSERT_EQ(v.tasks.size(), 3u);
  ASSERT_TRUE(v.pearson_r);
}

TEST(Slices, AccuracyCellsAndMeans) {
  std::vector<Outcome> o = {outcome(Task::FREQ, Language::en, true), outcome(Task::FREQ, Language::zh, false),
                            outcome(Task::DOT, Language::en, true), outcome(Task::DOT, Language::en, true)};
  const auto by_lang = accuracy_by("m", o, Slice::language);
  ASSERT_EQ(by_lang.size(), 2u);
  EXPECT_EQ(by_lang[0].slice, "en");
  EXPECT_DOUBLE_EQ(by_lang[0].accuracy, 1.0);
  EXPECT_EQ(by_lang[1].n, 1);
  const auto by_tl = accuracy_by("m", o, Slice::task_language);
  EXPECT_EQ(by_tl.size(), 3u);
  EXPECT_EQ(unweighted_mean({0.2, 0.4}), 0.30000000000000004);
  EXPECT_FALSE(unweighted_mean({}));
}

TEST(Curves, BucketsAndSmooths) {
  std::vector<Outcome> o;
  for (int len = 5; len < 45; ++len) o.push_back(outcome(Task::LENOP, Language::en, len < 25, len, "generation"));
  o.push_back(outcome(Task::LENOP, Language::en, false, 7, "recognition"));
  const auto c = length_curve(o, "generation", 10, 3);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_EQ(c[0].bucket_start, 0);
  EXPECT_EQ(c[0].n, 5);
  EXPECT_DOUBLE_EQ(c[1].accuracy, 1.0);
  EXPECT_DOUBLE_EQ(c[3].accuracy, 0.0);
  EXPECT_DOUBLE_EQ(c[2].accuracy, 0.5);
  EXPECT_DOUBLE_EQ(c[2].smoothed, 0.5);
  EXPECT_EQ(moving_average({1, 2, 3, 4}, 3), (std::vector<double>{1.5, 2, 3, 3.5}));
}

TEST(Summary, JsonRoundTripAndLanguageAccuracy) {
  std::vector<Outcome> o = {outcome(Task::FREQ, Language::en, true), outcome(Task::FREQ, Language::en, true),
                            outcome(Task::DOT, Language::en, false), outcome(Task::FREQ, Language::zh, true)};
  const auto s = summarize("m", o, 123.0);
  EXPECT_EQ(s.overall.n, 4);
  // Unweighted over tasks: FREQ/en 100%, DOT/en 0%.
  EXPECT_DOUBLE_EQ(*s.language_accuracy(Language::en), 50.0);
  EXPECT_FALSE(s.language_accuracy(Language::ko));
  const auto back = ModelSummary::from_json(s.to_json());
  EXPECT_EQ(back.to_json(), s.to_json());
  EXPECT_EQ(back.mean_output_chars, 123.0);
}

TEST(Report, WritesCsvsWithBlankCellsForAbsentLanguages) {
  TempDir dir("report");
  std::vector<Outcome> full, partial;
  for (auto l : {Language::en, Language::zh, Language::ko}) {
    full.push_back(outcome(Task::FREQ, l, l == Language::en));
    if (l != Language::ko) partial.push_back(outcome(Task::FREQ, l, true));
  }
  full.push_back(outcome(Task::LENOP, Language::en, true, 12, "generation"));
  const std::vector<ModelSummary> models = {summarize("alpha", full, 10.0), summarize("beta", partial, 20.0)};
  ReportOptions opts;
  opts.svg = true;
  const auto files = write_report(models, dir.path(), opts);
  for (const auto* name : {"accuracy_matrix.csv", "language_advantage.csv", "uniformity_ranking.csv",
                           "length_curves.csv", "report.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.path() / name)) << name;
  }
  const auto adv = slurp(dir.path() / "language_advantage.csv");
  EXPECT_NE(adv.find("alpha,100.00,0.00,0.00,100.000,-50.000,-50.000,47.140"), std::string::npos) << adv;
  EXPECT_NE(adv.find("beta,100.00,100.00,,,,,"), std::string::npos) << adv;
  const auto rank = slurp(dir.path() / "uniformity_ranking.csv");
  EXPECT_NE(rank.find("1,alpha,47.140"), std::string::npos) << rank;
  EXPECT_EQ(rank.find("beta"), std::string::npos);
  const auto matrix = slurp(dir.path() / "accuracy_matrix.csv");
  EXPECT_EQ(matrix.rfind("model,FREQ,LENOP,DIFF,SORT,REORD,COMPC,COMPM,DOT,RIDL,VAR,Avg\n", 0), 0u);
}

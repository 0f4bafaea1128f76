#include <set>

#include <gtest/gtest.h>

#include "audit.h"
#include "test_paths.h"
#include "tokbench/errors.h"
#include "tokbench/pipeline.h"
#include "tokbench/rng.h"
#include "tokbench/utf8.h"

using namespace tokbench;
using tokbench::testing::source_dir;

namespace {

Config small_config() {
  auto c = Config::defaults(source_dir());
  c.count = 60;
  c.ridl_ko_distribution = {{2, 30}, {3, 20}, {4, 10}};
  return c;
}

const Resources& shared_resources() {
  static const Resources res = load_resources(small_config());
  return res;
}

const oracle::Auditor& auditor() {
  static const oracle::Auditor a(source_dir());
  return a;
}

std::string fingerprint(const std::vector<TaskInstance>& v) {
  std::string s;
  for (const auto& i : v) s += i.to_json().dump() + "\n";
  return s;
}

class EveryTaskLanguage : public ::testing::TestWithParam<std::tuple<Task, Language>> {};

}  // namespace

namespace tokbench {
void PrintTo(Task t, std::ostream* os) { *os << to_string(t); }
void PrintTo(Language l, std::ostream* os) { *os << to_string(l); }
}  // namespace tokbench

TEST(Rng, DeterministicAndTagged) {
  Rng a(7), b(7);
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a.next(), b.next());
  EXPECT_NE(derive_seed(1, "freq_en"), derive_seed(1, "freq_zh"));
  EXPECT_NE(derive_seed(1, "freq_en"), derive_seed(2, "freq_en"));
  EXPECT_EQ(derive_seed(1, "freq_en"), derive_seed(1, "freq_en"));
}

TEST(Rng, RangesAndSamplesStayInBounds) {
  Rng r(11);
  std::vector<int> hits(5);
  for (int i = 0; i < 5000; ++i) {
    const int v = r.range(3, 7);
    ASSERT_GE(v, 3);
    ASSERT_LE(v, 7);
    ++hits[v - 3];
  }
  for (int h : hits) EXPECT_GT(h, 800);
  const auto idx = r.sample_indices(50, 20);
  EXPECT_EQ(std::set<std::size_t>(idx.begin(), idx.end()).size(), 20u);
  for (auto i : idx) EXPECT_LT(i, 50u);
  std::vector<int> v{1, 2, 3, 4, 5, 6};
  r.shuffle(v);
  EXPECT_EQ(std::multiset<int>(v.begin(), v.end()), (std::multiset<int>{1, 2, 3, 4, 5, 6}));
}

TEST(Sort, CompanionLengthsAreDistinctAndNearTenPercent) {
  for (int n = 5; n <= 254; ++n) {
    const auto lens = sort_companion_lengths(n);
    ASSERT_EQ(lens.size(), 3u) << n;
    EXPECT_EQ(lens[0], n);
    EXPECT_LE(std::abs(lens[1] - std::lround(n * 1.1)), 2) << n;
    EXPECT_LE(std::abs(lens[2] - std::lround(n * 0.9)), 2) << n;
    EXPECT_EQ(std::set<int>(lens.begin(), lens.end()).size(), 3u) << n;
  }
}

TEST(Reord, AdjacencyMatchesBruteForceOverAllPermutations) {
  const std::vector<std::vector<std::string>> bases = {
      {"a", "b", "c", "d", "e"}, {"x", "y", "x", "z", "w"}, {"p", "p", "q", "r"}, {"m", "n"}};
  for (const auto& base : bases) {
    auto perm = base;
    std::sort(perm.begin(), perm.end());
    do {
      EXPECT_EQ(adjacency_free(base, perm), oracle::adjacency_free(base, perm));
      int pairs = 0;
      for (std::size_t i = 0; i + 1 < perm.size(); ++i) {
        bool adjacent = false;
        for (std::size_t j = 0; j + 1 < base.size(); ++j) {
          adjacent |= (base[j] == perm[i] && base[j + 1] == perm[i + 1]) ||
                      (base[j + 1] == perm[i] && base[j] == perm[i + 1]);
        }
        pairs += adjacent;
      }
      EXPECT_EQ(adjacent_pair_count(base, perm), pairs);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Ridl, HangulInitials) {
  EXPECT_EQ(hangul_initials("동물원"), "ㄷㅁㅇ");
  EXPECT_EQ(hangul_initials("쏠"), "ㅆ");
}

TEST(JoinUnits, SpacesOnlyForEnglish) {
  EXPECT_EQ(join_units(Language::en, {"a", "b"}), "a b");
  EXPECT_EQ(join_units(Language::zh, {"中", "文"}), "中文");
}

TEST_P(EveryTaskLanguage, LabelsSurviveIndependentAudit) {
  const auto [task, lang] = GetParam();
  const auto cfg = small_config();
  const auto out = generate_task(shared_resources(), cfg, task, lang);
  ASSERT_EQ(out.size(), expected_count(cfg, task));
  std::set<std::string> ids;
  for (const auto& inst : out) {
    ASSERT_TRUE(ids.insert(inst.id).second) << inst.id;
    EXPECT_EQ(inst.task, task);
    EXPECT_EQ(inst.language, lang);
    const auto why = auditor().audit(inst.to_json());
    EXPECT_FALSE(why) << inst.id << ": " << why.value_or("");
  }
}

TEST_P(EveryTaskLanguage, SameSeedSameBytesOtherSeedDiffers) {
  const auto [task, lang] = GetParam();
  auto cfg = small_config();
  const auto a = fingerprint(generate_task(shared_resources(), cfg, task, lang));
  EXPECT_EQ(a, fingerprint(generate_task(shared_resources(), cfg, task, lang)));
  // DOT covers the whole inventory in a fixed rotation, so the seed does not enter.
  if (task == Task::DOT) return;
  cfg.seed += 1;
  EXPECT_NE(a, fingerprint(generate_task(shared_resources(), cfg, task, lang)));
}

INSTANTIATE_TEST_SUITE_P(All, EveryTaskLanguage,
                         ::testing::Combine(::testing::ValuesIn(kTasks),
                                            ::testing::Values(Language::en, Language::zh, Language::ko)),
                         [](const auto& info) {
                           return std::string(to_string(std::get<0>(info.param))) + "_" +
                                  std::string(to_string(std::get<1>(info.param)));
                         });

TEST(Lenop, RecognitionThenGenerationWithLengthCap) {
  const auto out = generate_task(shared_resources(), small_config(), Task::LENOP, Language::en);
  std::map<int, int> per_length;
  for (std::size_t i = 0; i < out.size(); ++i) {
    EXPECT_EQ(out[i].metadata.at("subtask"), i < 60 ? "recognition" : "generation");
    if (i < 60) ++per_length[out[i].metadata.at("length").get<int>()];
  }
  for (const auto& [len, n] : per_length) {
    EXPECT_GE(len, 5);
    EXPECT_LE(len, 254);
    EXPECT_LE(n, 4) << len;
  }
}

TEST(Compm, SplitAndCombineArePaired) {
  for (auto lang : {Language::en, Language::zh, Language::ko}) {
    const auto out = generate_task(shared_resources(), small_config(), Task::COMPM, lang);
    ASSERT_EQ(out.size(), 120u);
    for (std::size_t i = 0; i < 60; ++i) {
      EXPECT_EQ(out[i].metadata.at("subtask"), "split");
      EXPECT_EQ(out[i].metadata.at("pair"), out[i + 60].id);
      EXPECT_EQ(out[i + 60].metadata.at("pair"), out[i].id);
      EXPECT_EQ(out[i + 60].evaluation_type, EvalType::match_answer);
    }
  }
}

TEST(Dot, VariantsRotateOverInventory) {
  const auto out = generate_task(shared_resources(), small_config(), Task::DOT, Language::zh);
  std::map<std::string, int> variants;
  std::set<std::string> seen;
  for (const auto& i : out) {
    ++variants[i.metadata.at("variant")];
    seen.insert(i.metadata.at("character").get<std::string>());
  }
  EXPECT_EQ(seen.size(), 976u);
  ASSERT_EQ(variants.size(), 3u);
  for (const auto& [v, n] : variants) EXPECT_NEAR(n, 976 / 3, 2) << v;
}

TEST(Dot, BitmapsEqualRenderedGlyph) {
  const auto& res = shared_resources();
  for (auto lang : {Language::en, Language::zh, Language::ko}) {
    for (const auto& i : generate_task(res, small_config(), Task::DOT, lang)) {
      if (i.metadata.at("variant") == "char_to_category") continue;
      const auto at = i.question.find("bitmap:\n");
      ASSERT_NE(at, std::string::npos);
      const auto shown = Bitmap16::parse(i.question.substr(at + 8, 16 * 17 - 1));
      EXPECT_EQ(shown, res.fonts->render(utf8::single(i.metadata.at("character").get<std::string>()))) << i.id;
    }
  }
}

TEST(Freq, TargetCountsRespectCap) {
  auto cfg = small_config();
  const auto out = generate_task(shared_resources(), cfg, Task::FREQ, Language::zh);
  std::map<int, int> per_count;
  for (const auto& i : out) ++per_count[i.metadata.at("target_count").get<int>()];
  for (const auto& [c, n] : per_count) EXPECT_LE(n, 100) << c;
}

TEST(Var, KoreanSourcesAreDigitStrings) {
  for (const auto& i : generate_task(shared_resources(), small_config(), Task::VAR, Language::ko)) {
    const std::string label = i.label;
    EXPECT_EQ(label.find_first_not_of("0123456789"), std::string::npos) << label;
  }
}

TEST(Resources, RejectsMissingFile) {
  auto cfg = small_config();
  cfg.set("topics", "does/not/exist.tsv");
  EXPECT_THROW(load_resources(cfg), ValidationError);
}

#include <sys/wait.h>

#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

#include "test_paths.h"
#include "tokbench/errors.h"
#include "tokbench/pipeline.h"

using namespace tokbench;
using namespace tokbench::testing;

namespace {

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Runs the CLI with output captured to `log`; returns the exit status.
int cli(const std::string& args, const std::filesystem::path& log, const std::string& env = "") {
  const std::string cmd =
      env + " \"" TOKBENCH_CLI "\" " + args + " --root \"" + source_dir().string() + "\" > \"" + log.string() + "\" 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

TaskInstance number_instance(const std::string& id, Task task, Language lang, const std::string& label) {
  TaskInstance i;
  i.id = id;
  i.task = task;
  i.language = lang;
  i.evaluation_type = EvalType::number;
  i.label = label;
  return i;
}

RunRecord record(const std::string& id, const std::string& out, std::optional<std::string> error = {}) {
  RunRecord r;
  r.instance_id = id;
  r.raw_output = out;
  r.output_chars = out.size();
  r.error = std::move(error);
  return r;
}

}  // namespace

TEST(Config, LoadsKeyValueFile) {
  TempDir dir("conf");
  write_file(dir.path() / "c.conf", "# comment\nseed = 42\ncount=10\nridl_ko_distribution = 2:6,3:4\ntopics = t.tsv\n");
  const auto c = Config::load(dir.path() / "c.conf", dir.path());
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.count, 10);
  EXPECT_EQ(c.ridl_ko_distribution, (std::map<int, int>{{2, 6}, {3, 4}}));
  EXPECT_EQ(c.resource("topics"), dir.path() / "t.tsv");
  write_file(dir.path() / "bad.conf", "seed = many\n");
  EXPECT_THROW(Config::load(dir.path() / "bad.conf", dir.path()), std::exception);
}

TEST(Config, ShippedConfigResolvesEveryResource) {
  const auto c = Config::load(resource("tokbench.conf"), source_dir());
  for (const auto& key : kResourceKeys) EXPECT_TRUE(std::filesystem::exists(c.resource(key))) << key;
}

TEST(Hashing, KnownDigest) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Dataset, FilteredGenerationWritesManifest) {
  TempDir dir("gen");
  auto cfg = Config::defaults(source_dir());
  const auto res = load_resources(cfg);
  const auto manifest = generate_dataset(res, cfg, {Task::FREQ}, {Language::en}, dir.path());
  EXPECT_EQ(manifest["total"], 1000);
  const auto file = dir.path() / "freq_en.jsonl";
  EXPECT_EQ(manifest["files"]["freq_en.jsonl"]["sha256"], sha256_file(file));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "manifest.json"));
  const auto back = load_dataset(dir.path());
  ASSERT_EQ(back.size(), 1000u);
  EXPECT_EQ(back.front().id, "freq_en_0000");
  EXPECT_TRUE(load_dataset(dir.path(), {Task::DOT}).empty());
}

TEST(Dataset, ExpectedCounts) {
  const auto cfg = Config::defaults(source_dir());
  std::size_t total = 0;
  for (auto t : kTasks) total += 3 * expected_count(cfg, t);
  EXPECT_EQ(total, 35928u);
  EXPECT_EQ(expected_count(cfg, Task::DOT), 976u);
}

TEST(Score, LatestRecordWinsButSuccessIsKept) {
  const std::vector<TaskInstance> inst = {number_instance("a", Task::FREQ, Language::en, "1"),
                                          number_instance("b", Task::FREQ, Language::zh, "2"),
                                          number_instance("c", Task::DOT, Language::en, "3")};
  const std::vector<RunRecord> recs = {record("a", "<answer>0</answer>"), record("a", "<answer>1</answer>"),
                                       record("b", "<answer>2</answer>"), record("b", "", "HTTP 500"),
                                       record("zzz", "<answer>1</answer>")};
  const auto r = score_records(inst, recs, ScoreMode::score, "m");
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0]["correct"], true);
  EXPECT_EQ(r.rows[1]["correct"], true);
  EXPECT_EQ(r.missing, 1u);
  EXPECT_EQ(r.unmatched, std::vector<std::string>{"zzz"});
  EXPECT_EQ(r.summary.overall.n, 2);
  EXPECT_DOUBLE_EQ(*r.summary.mean_output_chars, 18.0);
}

TEST(Score, ErrorsScoreIncorrectAndRewardZero) {
  const std::vector<TaskInstance> inst = {number_instance("a", Task::FREQ, Language::en, "4")};
  const auto s = score_records(inst, {record("a", "", "timeout")}, ScoreMode::score, "m");
  EXPECT_EQ(s.rows[0]["correct"], false);
  EXPECT_FALSE(s.summary.mean_output_chars);
  const auto f = score_records(inst, {record("a", "", "timeout")}, ScoreMode::reward_fine, "m");
  EXPECT_EQ(f.rows[0]["branch"], "error");
  const auto g = score_records(inst, {record("a", "<answer>5</answer>")}, ScoreMode::reward_fine, "m");
  EXPECT_DOUBLE_EQ(g.mean_reward, 0.5);
  EXPECT_THROW(parse_score_mode("best"), DomainError);
}

TEST(Score, SummaryTableLayout) {
  std::vector<TaskInstance> inst;
  std::vector<RunRecord> recs;
  for (int i = 0; i < 4; ++i) {
    inst.push_back(number_instance("f" + std::to_string(i), Task::FREQ, Language::en, "1"));
    recs.push_back(record("f" + std::to_string(i), i == 0 ? "<answer>2</answer>" : "<answer>1</answer>"));
  }
  inst.push_back(number_instance("k", Task::FREQ, Language::ko, "1"));
  recs.push_back(record("k", "<answer>1</answer>"));
  const auto table = format_summary_table(score_records(inst, recs, ScoreMode::score, "m").summary);
  EXPECT_NE(table.find("FREQ       75.00%        -  100.00%   80.00%\n"), std::string::npos) << table;
  EXPECT_NE(table.find("all"), std::string::npos) << table;
}

TEST(Cli, ValidateGenerateSelfTest) {
  TempDir dir("cli");
  const auto log = dir.path() / "log.txt";
  EXPECT_EQ(cli("validate", log), 0) << slurp(log);
  const auto data = dir.path() / "data";
  ASSERT_EQ(cli("generate --tasks freq,var --langs en --out \"" + data.string() + "\"", log), 0) << slurp(log);
  EXPECT_EQ(load_dataset(data).size(), 2000u);
  EXPECT_EQ(cli("score --self-test --data \"" + data.string() + "\" --out \"" + (dir.path() / "s").string() + "\"", log), 0)
      << slurp(log);
  EXPECT_NE(slurp(log).find("100.00%"), std::string::npos) << slurp(log);
}

TEST(Cli, MissingTokenExitsWithUsageError) {
  TempDir dir("cli_token");
  const auto log = dir.path() / "log.txt";
  const int rc = cli("run --endpoint http://127.0.0.1:1/v1 --model m --token-env TOKBENCH_TEST_UNSET_KEY --data \"" +
                         dir.path().string() + "\"",
                     log, "env -u TOKBENCH_TEST_UNSET_KEY");
  EXPECT_EQ(rc, 1) << slurp(log);
  EXPECT_NE(slurp(log).find("TOKBENCH_TEST_UNSET_KEY"), std::string::npos) << slurp(log);
}

TEST(Cli, UnknownSubcommandFails) {
  TempDir dir("cli_bad");
  EXPECT_NE(cli("frobnicate", dir.path() / "log.txt"), 0);
}

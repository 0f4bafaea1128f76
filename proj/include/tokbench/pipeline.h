#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tokbench/bitmap.h"
#include "tokbench/generators.h"
#include "tokbench/harness.h"
#include "tokbench/report.h"
#include "tokbench/rewards.h"
#include "tokbench/text.h"

namespace tokbench {

// Resource keys every config must resolve.
extern const std::vector<std::string> kResourceKeys;

struct Config {
  std::filesystem::path root = ".";
  std::map<std::string, std::string> values;
  std::uint64_t seed = 20250917;
  int count = 1000;
  int dot_count = 976;
  std::map<int, int> ridl_ko_distribution = {{2, 500}, {3, 350}, {4, 150}};
  std::filesystem::path out_dir = "data";

  // `key = value` lines, '#' comments; relative paths resolve against `root`.
  static Config load(const std::filesystem::path& file, const std::filesystem::path& root);
  static Config defaults(const std::filesystem::path& root);
  void set(const std::string& key, const std::string& value);
  std::filesystem::path resource(const std::string& key) const;
};

struct Resources {
  Corpus en, zh, ko;
  std::vector<std::string> zh_sentences;
  ComponentTable components;
  VariantMap variants;
  std::vector<Topic> topics;
  std::vector<RiddleEntry> ko_riddles;
  std::vector<ExternalRiddle> en_riddles, zh_riddles;
  std::vector<InventoryEntry> inventory;
  std::shared_ptr<FontStore> fonts;

  const Corpus& corpus(Language lang) const;
};

// Loads and cross-checks every resource; throws ValidationError listing all problems.
Resources load_resources(const Config& config);

std::vector<TaskInstance> generate_task(const Resources& res, const Config& config, Task task, Language lang);
// Instances expected per file under `config`.
std::size_t expected_count(const Config& config, Task task);

// Writes one JSON-lines file per (task, language) plus manifest.json; returns the manifest.
Json generate_dataset(const Resources& res, const Config& config, const std::vector<Task>& tasks,
                      const std::vector<Language>& langs, const std::filesystem::path& out_dir);

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

// Every *.jsonl dataset file in a directory, in task/language order.
std::vector<TaskInstance> load_dataset(const std::filesystem::path& dir, const std::vector<Task>& tasks = {},
                                       const std::vector<Language>& langs = {});

enum class ScoreMode { score, reward_coarse, reward_fine };
ScoreMode parse_score_mode(std::string_view s);

struct ScoreResult {
  std::vector<Json> rows;  // per instance, dataset order
  ModelSummary summary;
  double mean_reward = 0.0;  // reward modes only
  std::vector<std::string> unmatched;  // run ids absent from the dataset
  std::size_t missing = 0;             // dataset instances absent from the run
};

ScoreResult score_records(const std::vector<TaskInstance>& instances, const std::vector<RunRecord>& records,
                          ScoreMode mode, const std::string& model);
// Scores every instance against its own reference output.
ScoreResult self_test(const std::vector<TaskInstance>& instances);

// Fixed-width per-task/per-language accuracy table.
std::string format_summary_table(const ModelSummary& summary);

}  // namespace tokbench

#include "tokbench/pipeline.h"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iterator>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "tokbench/errors.h"
#include "tokbench/rng.h"
#include "tokbench/scoring.h"
#include "tokbench/utf8.h"

namespace tokbench {

const Corpus& Resources::corpus(Language lang) const {
  switch (lang) {
    case Language::zh: return zh;
    case Language::ko: return ko;
    default: return en;
  }
}

namespace {

void check_unique(const std::vector<std::string>& items, const std::string& name, std::vector<std::string>& problems) {
  std::unordered_set<std::string> seen;
  for (const auto& i : items) {
    if (!seen.insert(i).second) {
      problems.push_back(fmt::format("{}: duplicate item \"{}\"", name, i));
      return;
    }
  }
}

// A variant that is itself a source would be rewritten by restoration.
void check_invertible(const HomoglyphTable& t, const std::string& name, std::vector<std::string>& problems) {
  for (const auto& [src, vars] : t.entries()) {
    for (const auto& v : vars) {
      if (t.variants(v)) problems.push_back(fmt::format("{}: variant {} of {} is also a source", name, v, src));
    }
  }
}

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

Resources load_resources(const Config& config) {
  std::vector<std::string> problems;
  Resources r;
  for (const auto& key : kResourceKeys) {
    try {
      const auto path = config.resource(key);
      if (!std::filesystem::is_regular_file(path)) problems.push_back(fmt::format("{}: missing file {}", key, path.string()));
    } catch (const std::exception& e) {
      problems.push_back(e.what());
    }
  }
  if (!problems.empty()) throw ValidationError(problems);

  auto attempt = [&](const std::string& key, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      problems.push_back(fmt::format("{}: {}", key, e.what()));
    }
  };
  attempt("en_corpus", [&] { r.en = Corpus::load(Language::en, config.resource("en_corpus")); });
  attempt("zh_corpus", [&] { r.zh = Corpus::load(Language::zh, config.resource("zh_corpus")); });
  attempt("ko_corpus", [&] { r.ko = Corpus::load(Language::ko, config.resource("ko_corpus")); });
  attempt("zh_sentences", [&] { r.zh_sentences = read_item_lines(config.resource("zh_sentences")); });
  attempt("zh_components", [&] { r.components = ComponentTable::load(config.resource("zh_components")); });
  attempt("en_homoglyphs", [&] { r.variants.en = HomoglyphTable::load(config.resource("en_homoglyphs")); });
  attempt("ko_digits", [&] { r.variants.ko_digits = HomoglyphTable::load(config.resource("ko_digits")); });
  attempt("zh_martian", [&] { r.variants.zh = HomoglyphTable::load(config.resource("zh_martian")); });
  attempt("topics", [&] { r.topics = load_topics(config.resource("topics")); });
  attempt("ko_riddles", [&] { r.ko_riddles = load_riddle_csv(config.resource("ko_riddles")); });
  attempt("en_riddles", [&] { r.en_riddles = load_external_riddles(config.resource("en_riddles"), Language::en); });
  attempt("zh_riddles", [&] { r.zh_riddles = load_external_riddles(config.resource("zh_riddles"), Language::zh); });
  attempt("dot_inventory", [&] { r.inventory = load_inventory(config.resource("dot_inventory")); });
  attempt("fonts", [&] {
    std::shared_ptr<const GlyphRenderer> fallback = HexFontRenderer::load(config.resource("hangul_hex"));
    r.fonts = std::make_shared<FontStore>(read_bytes(config.resource("hzk16")), read_bytes(config.resource("asc16")),
                                          std::move(fallback));
  });

  check_unique(r.en.items, "en_corpus", problems);
  check_unique(r.zh.items, "zh_corpus", problems);
  check_unique(r.ko.items, "ko_corpus", problems);
  if (!r.zh.items.empty() && r.zh.items.size() < 2500) {
    problems.push_back(fmt::format("zh_corpus: {} characters, 2500 expected", r.zh.items.size()));
  }
  if (!r.ko.items.empty() && r.ko.items.size() < 4000) {
    problems.push_back(fmt::format("ko_corpus: {} syllables, at least 4000 expected", r.ko.items.size()));
  }
  check_invertible(r.variants.en, "en_homoglyphs", problems);
  check_invertible(r.variants.ko_digits, "ko_digits", problems);
  check_invertible(r.variants.zh, "zh_martian", problems);
  for (const auto& s : r.zh_sentences) {
    for (const auto& ch : utf8::split(s)) {
      if (r.variants.zh.restore(ch)) {
        problems.push_back(fmt::format("zh_sentences: \"{}\" already contains variant character {}", s, ch));
        break;
      }
    }
  }
  if (r.fonts) {
    std::size_t renderable = 0;
    for (const auto& e : r.inventory) {
      try {
        r.fonts->render(utf8::single(e.character));
        ++renderable;
      } catch (const RenderError& err) {
        problems.push_back(fmt::format("dot_inventory: {}", err.what()));
      }
    }
    if (renderable != static_cast<std::size_t>(config.dot_count)) {
      problems.push_back(fmt::format("dot_inventory: {} renderable characters, {} configured", renderable, config.dot_count));
    }
  }
  if (!problems.empty()) throw ValidationError(problems);
  return r;
}

std::size_t expected_count(const Config& config, Task task) {
  switch (task) {
    case Task::DOT: return static_cast<std::size_t>(config.dot_count);
    case Task::LENOP:
    case Task::COMPM: return 2 * static_cast<std::size_t>(config.count);
    default: return static_cast<std::size_t>(config.count);
  }
}

std::vector<TaskInstance> generate_task(const Resources& res, const Config& config, Task task, Language lang) {
  GenSpec spec;
  spec.language = lang;
  spec.count = config.count;
  spec.seed = derive_seed(config.seed, dataset_file_name(task, lang));
  const Corpus& corpus = res.corpus(lang);
  switch (task) {
    case Task::FREQ: return gen_freq(spec, corpus);
    case Task::LENOP: return gen_lenop(spec, corpus, res.topics);
    case Task::DIFF: return gen_diff(spec, corpus);
    case Task::SORT: return gen_sort(spec, corpus);
    case Task::REORD: return gen_reord(spec, corpus);
    case Task::COMPC: return gen_compc(spec, corpus, res.components);
    case Task::COMPM: return gen_compm(spec, corpus, res.components);
    case Task::DOT: return gen_dot(spec, *res.fonts, res.inventory);
    case Task::RIDL:
      if (lang == Language::ko) return gen_ridl_ko(spec, res.ko_riddles, config.ridl_ko_distribution);
      return gen_ridl_external(spec, lang == Language::en ? res.en_riddles : res.zh_riddles);
    case Task::VAR:
      if (lang == Language::en) return gen_var(spec, res.variants, res.en.items);
      if (lang == Language::zh) return gen_var(spec, res.variants, res.zh_sentences);
      return gen_var(spec, res.variants, {});
  }
  throw DomainError("unknown task");
}

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 digest failed");
  }
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return sha256_hex(data);
}

Json generate_dataset(const Resources& res, const Config& config, const std::vector<Task>& tasks,
                      const std::vector<Language>& langs, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  Json manifest;
  manifest["seed"] = config.seed;
  manifest["count"] = config.count;
  Json files = Json::object();
  std::size_t total = 0;
  for (auto task : tasks) {
    for (auto lang : langs) {
      auto instances = generate_task(res, config, task, lang);
      if (instances.size() != expected_count(config, task)) {
        throw GenerationError(fmt::format("{}: generated {} instances, {} expected", dataset_file_name(task, lang),
                                          instances.size(), expected_count(config, task)));
      }
      const auto name = dataset_file_name(task, lang);
      write_jsonl(out_dir / name, instances);
      files[name] = {{"count", instances.size()}, {"sha256", sha256_file(out_dir / name)}};
      total += instances.size();
    }
  }
  manifest["files"] = std::move(files);
  manifest["total"] = total;
  Json checksums = Json::object();
  for (const auto& key : kResourceKeys) checksums[key] = sha256_file(config.resource(key));
  manifest["resources"] = std::move(checksums);
  std::ofstream out(out_dir / "manifest.json", std::ios::binary | std::ios::trunc);
  out << manifest.dump(2) << '\n';
  return manifest;
}

std::vector<TaskInstance> load_dataset(const std::filesystem::path& dir, const std::vector<Task>& tasks,
                                       const std::vector<Language>& langs) {
  std::vector<TaskInstance> out;
  const auto& task_list = tasks.empty() ? std::vector<Task>(kTasks.begin(), kTasks.end()) : tasks;
  const auto& lang_list = langs.empty() ? std::vector<Language>(kLanguages.begin(), kLanguages.end()) : langs;
  for (auto t : task_list) {
    for (auto l : lang_list) {
      const auto path = dir / dataset_file_name(t, l);
      if (!std::filesystem::exists(path)) continue;
      auto part = read_instances(path);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
  }
  return out;
}

ScoreMode parse_score_mode(std::string_view s) {
  if (s == "score") return ScoreMode::score;
  if (s == "reward-coarse") return ScoreMode::reward_coarse;
  if (s == "reward-fine") return ScoreMode::reward_fine;
  throw DomainError("unknown score mode \"" + std::string(s) + "\"");
}

namespace {

Outcome outcome_of(const TaskInstance& inst, bool correct) {
  Outcome o{inst.id, inst.task, inst.language, correct, std::nullopt, ""};
  if (inst.task == Task::LENOP) {
    o.subtask = inst.metadata.value("subtask", "");
    if (inst.metadata.contains("target_length")) {
      o.length = inst.metadata["target_length"].get<int>();
    } else if (inst.metadata.contains("length")) {
      o.length = inst.metadata["length"].get<int>();
    }
  }
  return o;
}

}  // namespace

ScoreResult score_records(const std::vector<TaskInstance>& instances, const std::vector<RunRecord>& records,
                          ScoreMode mode, const std::string& model) {
  std::unordered_map<std::string, const RunRecord*> by_id;
  for (const auto& r : records) {
    // Later records supersede earlier ones; a success is never replaced by an error.
    auto& slot = by_id[r.instance_id];
    if (slot == nullptr || !r.error || slot->error) slot = &r;
  }
  std::unordered_set<std::string> known;
  for (const auto& i : instances) known.insert(i.id);

  ScoreResult res;
  for (const auto& [id, r] : by_id) {
    if (!known.count(id)) res.unmatched.push_back(id);
  }
  std::sort(res.unmatched.begin(), res.unmatched.end());

  std::vector<Outcome> outcomes;
  double chars = 0, reward_sum = 0;
  std::size_t with_output = 0;
  for (const auto& inst : instances) {
    auto it = by_id.find(inst.id);
    if (it == by_id.end()) {
      ++res.missing;
      continue;
    }
    const RunRecord& rec = *it->second;
    Json row;
    row["instance_id"] = inst.id;
    if (mode == ScoreMode::score) {
      const auto s = rec.error ? ScoreOutcome{false, "", "run error: " + *rec.error}
                               : evaluate_sample(inst, rec.raw_output);
      row["correct"] = s.correct;
      row["extracted"] = s.extracted;
      row["detail"] = s.detail;
      outcomes.push_back(outcome_of(inst, s.correct));
    } else {
      const auto rm = mode == ScoreMode::reward_coarse ? RewardMode::coarse : RewardMode::fine;
      const auto rv = rec.error ? RewardValue{0.0, "error"} : reward_for_sample(rm, inst, rec.raw_output);
      row["reward"] = rv.value;
      row["mode"] = std::string(to_string(rm));
      row["branch"] = rv.branch;
      reward_sum += rv.value;
      outcomes.push_back(outcome_of(inst, !rec.error && evaluate_sample(inst, rec.raw_output).correct));
    }
    if (!rec.error) {
      chars += static_cast<double>(rec.output_chars);
      ++with_output;
    }
    res.rows.push_back(std::move(row));
  }
  res.summary = summarize(model, outcomes, with_output ? std::optional<double>(chars / with_output) : std::nullopt);
  res.mean_reward = res.rows.empty() ? 0.0 : reward_sum / static_cast<double>(res.rows.size());
  return res;
}

ScoreResult self_test(const std::vector<TaskInstance>& instances) {
  std::vector<RunRecord> records;
  records.reserve(instances.size());
  for (const auto& inst : instances) {
    RunRecord r;
    r.instance_id = inst.id;
    r.raw_output = reference_output(inst);
    r.output_chars = utf8::decode(r.raw_output).size();
    records.push_back(std::move(r));
  }
  return score_records(instances, records, ScoreMode::score, "self-test");
}

std::string format_summary_table(const ModelSummary& s) {
  std::string out = fmt::format("{:<8}", "task");
  for (auto l : kLanguages) out += fmt::format("{:>9}", to_string(l));
  out += fmt::format("{:>9}\n", "all");
  auto fmt_cell = [](const std::map<std::string, Tally>& m, const std::string& key) {
    auto it = m.find(key);
    return it == m.end() || it->second.n == 0 ? fmt::format("{:>9}", "-")
                                              : fmt::format("{:>8.2f}%", 100.0 * it->second.accuracy());
  };
  for (auto t : kTasks) {
    const std::string task(to_string(t));
    if (!s.by_task.count(task)) continue;
    out += fmt::format("{:<8}", task);
    for (auto l : kLanguages) out += fmt_cell(s.by_task_language, task + "/" + std::string(to_string(l)));
    out += fmt_cell(s.by_task, task) + "\n";
  }
  out += fmt::format("{:<8}", "all");
  for (auto l : kLanguages) out += fmt_cell(s.by_language, std::string(to_string(l)));
  out += s.overall.n ? fmt::format("{:>8.2f}%\n", 100.0 * s.overall.accuracy()) : fmt::format("{:>9}\n", "-");
  return out;
}

}  // namespace tokbench

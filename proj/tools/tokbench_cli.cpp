#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <set>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"
#include "tokbench/errors.h"
#include "tokbench/pipeline.h"

using namespace tokbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitPartial = 2;

struct Common {
  std::string root = ".";
  std::string config;
  std::vector<std::string> tasks;
  std::vector<std::string> langs;
  std::optional<std::uint64_t> seed;
};

Config make_config(const Common& c) {
  const std::filesystem::path root(c.root);
  Config config;
  if (c.config.empty()) {
    const auto fallback = root / "resources" / "tokbench.conf";
    config = std::filesystem::exists(fallback) ? Config::load(fallback, root) : Config::defaults(root);
  } else {
    const std::filesystem::path cfg(c.config);
    config = Config::load(cfg.is_absolute() ? cfg : root / cfg, root);
  }
  if (c.seed) config.seed = *c.seed;
  return config;
}

std::filesystem::path under_root(const Common& c, const std::string& p) {
  const std::filesystem::path path(p);
  return path.is_absolute() ? path : std::filesystem::path(c.root) / path;
}

std::vector<Task> task_filter(const Common& c) {
  std::vector<Task> out;
  for (const auto& t : c.tasks) out.push_back(parse_task(t));
  if (out.empty()) out.assign(kTasks.begin(), kTasks.end());
  return out;
}

std::vector<Language> lang_filter(const Common& c) {
  std::vector<Language> out;
  for (const auto& l : c.langs) out.push_back(parse_language(l));
  if (out.empty()) out.assign(kLanguages.begin(), kLanguages.end());
  return out;
}

void write_json_lines(const std::filesystem::path& path, const std::vector<Json>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot write " + path.string());
  for (const auto& r : rows) out << r.dump() << '\n';
}

void add_common(CLI::App* cmd, Common& c, bool filters) {
  cmd->add_option("--root", c.root, "Base directory for relative paths")->capture_default_str();
  cmd->add_option("--config", c.config, "Key-value config file (default: resources/tokbench.conf)");
  if (filters) {
    cmd->add_option("--tasks", c.tasks, "Task filter, e.g. freq lenop")->delimiter(',');
    cmd->add_option("--langs", c.langs, "Language filter: en zh ko")->delimiter(',');
  }
}

int cmd_validate(const Common& c) {
  const auto config = make_config(c);
  load_resources(config);
  std::cout << "resources ok\n";
  return kExitOk;
}

int cmd_generate(const Common& c, const std::string& out) {
  const auto config = make_config(c);
  const auto res = load_resources(config);
  const auto dir = under_root(c, out.empty() ? config.out_dir.string() : out);
  const auto manifest = generate_dataset(res, config, task_filter(c), lang_filter(c), dir);
  for (const auto& [name, f] : manifest["files"].items()) {
    std::cout << fmt::format("{:<16} {:>6}  {}\n", name, f["count"].get<std::size_t>(), f["sha256"].get<std::string>());
  }
  std::cout << fmt::format("{} files, {} instances -> {}\n", manifest["files"].size(),
                           manifest["total"].get<std::size_t>(), dir.string());
  return kExitOk;
}

struct RunArgs {
  std::string data = "data";
  std::string out;
  ModelEndpoint endpoint;
  GenerationParams params;
  bool cot = false;
  int timeout_s = 300;
};

int cmd_run(const Common& c, RunArgs a) {
  const char* token = std::getenv(a.endpoint.token_env.c_str());
  if (token == nullptr || *token == '\0') {
    std::cerr << fmt::format("error: set {} to the endpoint's API key before running\n", a.endpoint.token_env);
    return kExitInvalid;
  }
  a.endpoint.timeout = std::chrono::seconds(a.timeout_s);
  const auto instances = load_dataset(under_root(c, a.data), task_filter(c), lang_filter(c));
  if (instances.empty()) {
    std::cerr << "error: no dataset files found in " << under_root(c, a.data).string() << '\n';
    return kExitInvalid;
  }
  const auto run_file = under_root(c, a.out.empty() ? "runs/" + a.endpoint.model + ".jsonl" : a.out);
  if (run_file.has_parent_path()) std::filesystem::create_directories(run_file.parent_path());

  HttpChatClient client(a.endpoint, token);
  std::mutex io;
  RunOptions opts;
  opts.cot = a.cot;
  opts.on_record = [&](const RunRecord& r, const RunStats& s) {
    std::lock_guard lock(io);
    const auto done = s.succeeded + s.failed;
    if (r.error) spdlog::warn("{}: {}", r.instance_id, *r.error);
    if (done % 50 == 0 || done + s.skipped == s.total) {
      std::cerr << fmt::format("[{}/{}] ok={} failed={}\n", done, s.total - s.skipped, s.succeeded, s.failed);
    }
  };
  try {
    // Count pending work up front so a resumed run reports what is left.
    std::size_t done = 0;
    if (std::filesystem::exists(run_file)) {
      std::set<std::string> complete;
      for (const auto& r : read_run_file(run_file)) {
        if (!r.error) complete.insert(r.instance_id);
      }
      for (const auto& i : instances) done += complete.count(i.id);
    }
    std::cout << fmt::format("{} remaining\n", instances.size() - done);
    const auto stats = run_batch(instances, client, a.endpoint, a.params, run_file, opts);
    std::cout << fmt::format("total={} skipped={} succeeded={} failed={} -> {}\n", stats.total, stats.skipped,
                             stats.succeeded, stats.failed, run_file.string());
    return stats.failed > 0 ? kExitPartial : kExitOk;
  } catch (const AuthError& e) {
    std::cerr << "error: " << e.what() << "\nCheck the key in " << a.endpoint.token_env << ".\n";
    return kExitInvalid;
  }
}

int cmd_score(const Common& c, const std::string& data, const std::string& run, const std::string& mode_name,
              const std::string& out, const std::string& model_name, bool self) {
  const auto instances = load_dataset(under_root(c, data), task_filter(c), lang_filter(c));
  ScoreResult result;
  if (self) {
    result = self_test(instances);
  } else {
    if (run.empty()) throw CLI::ValidationError("--run", "required unless --self-test is given");
    const auto records = read_run_file(under_root(c, run));
    std::string model = model_name;
    if (model.empty()) model = !records.empty() && !records.front().model.empty()
                                   ? records.front().model
                                   : std::filesystem::path(run).stem().string();
    result = score_records(instances, records, parse_score_mode(mode_name), model);
  }
  for (const auto& id : result.unmatched) spdlog::warn("run record {} has no dataset instance", id);
  if (result.missing > 0) spdlog::warn("{} dataset instances have no run record", result.missing);

  std::cout << format_summary_table(result.summary);
  if (!self && mode_name != "score") std::cout << fmt::format("mean reward: {:.4f}\n", result.mean_reward);

  const std::string stem = self ? std::string("self-test") : std::filesystem::path(run).stem().string();
  const auto dir = under_root(c, out.empty() ? "scores" : out);
  std::filesystem::create_directories(dir);
  const auto suffix = self || mode_name == "score" ? std::string() : "." + mode_name;
  write_json_lines(dir / (stem + suffix + ".results.jsonl"), result.rows);
  std::ofstream(dir / (stem + suffix + ".summary.json"), std::ios::binary | std::ios::trunc)
      << result.summary.to_json().dump(2) << '\n';
  std::cout << "results -> " << (dir / (stem + suffix + ".results.jsonl")).string() << '\n';

  if (self && result.summary.overall.correct != result.summary.overall.n) return kExitInvalid;
  return kExitOk;
}

int cmd_report(const Common& c, const std::vector<std::string>& summaries, const std::string& out,
               const ReportOptions& options) {
  std::vector<ModelSummary> models;
  for (const auto& s : summaries) {
    std::ifstream in(under_root(c, s));
    if (!in) throw ResourceError("cannot open " + s);
    models.push_back(ModelSummary::from_json(Json::parse(in)));
  }
  for (const auto& p : write_report(models, under_root(c, out), options)) std::cout << p.string() << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Token-awareness and structural-understanding benchmark toolkit"};
  app.require_subcommand(1);
  Common common;

  auto* validate = app.add_subcommand("validate", "Load and cross-check every configured resource");
  add_common(validate, common, false);

  std::string gen_out;
  auto* generate = app.add_subcommand("generate", "Generate the dataset and manifest");
  add_common(generate, common, true);
  generate->add_option("--out", gen_out, "Output directory (default: out_dir from config)");
  generate->add_option("--seed", common.seed, "Override the configured seed");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Send every pending instance to a chat-completions endpoint");
  add_common(run, common, true);
  run->add_option("--data", run_args.data, "Dataset directory")->capture_default_str();
  run->add_option("--out", run_args.out, "Run file (default: runs/<model>.jsonl)");
  run->add_option("--endpoint", run_args.endpoint.base_url, "Base URL, e.g. https://host/v1")->required();
  run->add_option("--model", run_args.endpoint.model, "Model name")->required();
  run->add_option("--token-env", run_args.endpoint.token_env, "Environment variable holding the API key")
      ->capture_default_str();
  run->add_option("--concurrency", run_args.endpoint.max_concurrent, "Maximum requests in flight")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--max-attempts", run_args.endpoint.retry.max_attempts, "Attempts per instance")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  run->add_option("--timeout", run_args.timeout_s, "Per-request timeout in seconds")->capture_default_str();
  run->add_option("--temperature", run_args.params.temperature)->capture_default_str();
  run->add_option("--max-tokens", run_args.params.max_tokens)->capture_default_str();
  run->add_option("--top-p", run_args.params.top_p)->capture_default_str();
  run->add_option("--top-k", run_args.params.top_k)->capture_default_str();
  run->add_flag("--cot", run_args.cot, "Use the step-by-step instruction suffix");

  std::string score_data = "data", score_run, score_mode = "score", score_out, score_model;
  bool self = false;
  auto* score = app.add_subcommand("score", "Score a run file against the dataset");
  add_common(score, common, true);
  score->add_option("--data", score_data, "Dataset directory")->capture_default_str();
  score->add_option("--run", score_run, "Run file to score");
  score->add_option("--mode", score_mode, "score | reward-coarse | reward-fine")
      ->capture_default_str()
      ->check(CLI::IsMember({"score", "reward-coarse", "reward-fine"}));
  score->add_option("--out", score_out, "Directory for results and summary (default: scores)");
  score->add_option("--model", score_model, "Model name for the summary");
  score->add_flag("--self-test", self, "Score every instance against its stored answer");

  std::vector<std::string> summaries;
  std::string report_out = "report";
  ReportOptions report_opts;
  auto* report = app.add_subcommand("report", "Build tables and curves from score summaries");
  add_common(report, common, false);
  report->add_option("summaries", summaries, "*.summary.json files")->required();
  report->add_option("--out", report_out, "Output directory")->capture_default_str();
  report->add_option("--bucket", report_opts.bucket_width, "Length bucket width")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  report->add_option("--window", report_opts.window, "Smoothing window in buckets")->capture_default_str();
  report->add_flag("--svg", report_opts.svg, "Also write SVG length curves");

  CLI11_PARSE(app, argc, argv);
  spdlog::set_pattern("%l: %v");

  try {
    if (*validate) return cmd_validate(common);
    if (*generate) return cmd_generate(common, gen_out);
    if (*run) return cmd_run(common, run_args);
    if (*score) return cmd_score(common, score_data, score_run, score_mode, score_out, score_model, self);
    if (*report) return cmd_report(common, summaries, report_out, report_opts);
  } catch (const ValidationError& e) {
    std::cerr << "validation failed:\n";
    for (const auto& p : e.problems()) std::cerr << "  - " << p << '\n';
    return kExitInvalid;
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitOk;
}

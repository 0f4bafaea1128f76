// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>

#include <fmt/core.h>
#include <spdlog/spdlog.h>

#include "audit.h"
#include "fake_client.h"
#include "reward_table.h"
#include "scoring_checks.h"
#include "test_paths.h"
#include "tokbench/pipeline.h"
#include "tokbench/utf8.h"

using namespace tokbench;
using namespace tokbench::testing;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Shared state: resources and one full dataset generated into a temp dir.
struct Context {
  Config config = Config::defaults(source_dir());
  Resources resources = load_resources(config);
  TempDir first{"acceptance_a"}, second{"acceptance_b"};
  Json manifest;
  double generation_s = 0;
  std::vector<TaskInstance> dataset;

  Context() {
    const auto t0 = std::chrono::steady_clock::now();
    manifest = generate_dataset(resources, config, {kTasks.begin(), kTasks.end()},
                                {kLanguages.begin(), kLanguages.end()}, first.path());
    generation_s = seconds_since(t0);
    dataset = load_dataset(first.path());
  }
};

Verdict hangul_round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  int bad = 0;
  for (char32_t s = 0xAC00; s <= 0xD7A3; ++s) bad += compose_hangul(decompose_hangul(s)) != s;
  const double t = seconds_since(t0);
  return {bad == 0 && t < 1.0, fmt::format("11172 syllables, {} mismatches, {:.3f} s", bad, t)};
}

Verdict self_test_integrity(const Context& ctx) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto res = self_test(ctx.dataset);
  const double t = seconds_since(t0) + ctx.generation_s;
  int below = 0;
  for (const auto& [slice, tally] : res.summary.by_task_language) below += tally.correct != tally.n;
  const bool pass = below == 0 && res.summary.overall.n == 35928 && res.summary.by_task_language.size() == 30 && t < 300;
  return {pass, fmt::format("{} instances, {} of {} slices below 100%, {:.1f} s including generation",
                            res.summary.overall.n, below, res.summary.by_task_language.size(), t)};
}

Verdict oracle_audit(const Context& ctx) {
  const oracle::Auditor auditor(source_dir());
  std::map<Task, std::vector<const TaskInstance*>> by_task;
  for (const auto& i : ctx.dataset) by_task[i.task].push_back(&i);
  std::mt19937 rng(20250917);
  int audited = 0, failures = 0;
  std::string first_failure;
  for (auto& [task, list] : by_task) {
    std::shuffle(list.begin(), list.end(), rng);
    for (std::size_t k = 0; k < std::min<std::size_t>(1000, list.size()); ++k) {
      ++audited;
      if (const auto why = auditor.audit(list[k]->to_json())) {
        if (failures++ == 0) first_failure = list[k]->id + ": " + *why;
      }
    }
  }
  const bool pass = failures == 0 && audited == 10000;
  return {pass, fmt::format("{} instances audited, {} failures{}", audited, failures,
                            first_failure.empty() ? "" : " (first " + first_failure + ")")};
}

Verdict scorer_equivalence() {
  const auto res = reord_equivalence(50, 7);
  return {res.mismatches.empty() && res.bases == 50,
          fmt::format("{} bases, {} predictions, {} disagreements{}", res.bases, res.predictions,
                      res.mismatches.size(), res.mismatches.empty() ? "" : " (first " + res.mismatches[0] + ")")};
}

Verdict reward_table_check() {
  const auto rows = reward_table();
  int bad = 0;
  std::string first;
  for (const auto& r : rows) {
    const double v = fine_reward(r.input).value;
    if (std::fabs(v - r.expected) > 1e-9 && bad++ == 0) first = fmt::format(" (first {}: {} vs {})", r.name, v, r.expected);
  }
  return {bad == 0 && rows.size() >= 30, fmt::format("{} rows, {} mismatches{}", rows.size(), bad, first)};
}

Verdict dataset_shape(Context& ctx) {
  std::map<std::string, std::size_t> counts;
  for (const auto& i : ctx.dataset) ++counts[dataset_file_name(i.task, i.language)];
  int wrong = 0;
  for (auto t : kTasks) {
    for (auto l : kLanguages) wrong += counts[dataset_file_name(t, l)] != expected_count(ctx.config, t);
  }
  generate_dataset(ctx.resources, ctx.config, {kTasks.begin(), kTasks.end()}, {kLanguages.begin(), kLanguages.end()},
                   ctx.second.path());
  int differing = 0;
  for (const auto& entry : std::filesystem::directory_iterator(ctx.first.path())) {
    differing += slurp(entry.path()) != slurp(ctx.second.path() / entry.path().filename());
  }
  const bool pass = wrong == 0 && ctx.dataset.size() == 35928 && ctx.manifest["total"] == 35928 && differing == 0;
  return {pass, fmt::format("{} instances in {} files, {} files off count, DOT {} per language, {} files differ on regeneration",
                            ctx.dataset.size(), counts.size(), wrong, counts["dot_en.jsonl"], differing)};
}

Verdict report_arithmetic() {
  std::ifstream in(fixture("reference_tables.json"));
  const auto tables = Json::parse(in);
  const auto& expected = tables["expected"];

  const auto& lang_rows = tables["language_accuracy"]["rows"];
  const auto o3 = language_advantage(lang_rows[0]["en"], lang_rows[0]["zh"], lang_rows[0]["ko"]);
  double worst_sum = 0;
  for (const auto& r : lang_rows) {
    const auto a = language_advantage(r["en"], r["zh"], r["ko"]);
    worst_sum = std::max(worst_sum, std::fabs(a.EA + a.CA + a.KA));
  }

  const auto& task_row = tables["task_accuracy"]["rows"][0];
  const auto avg = unweighted_mean(task_row["values"].get<std::vector<double>>()).value_or(0);

  std::vector<double> len, acc;
  for (const auto& r : tables["output_length"]["rows"]) {
    len.push_back(r["mean_chars"]);
    acc.push_back(r["accuracy"]);
  }
  const double r = pearson(len, acc).value_or(0);

  const bool ea_ok = std::fabs(o3.EA - expected["o3_english_advantage"].get<double>()) <= 0.01;
  const bool sum_ok = worst_sum < 1e-9;
  const bool avg_ok = std::fabs(avg - expected["o3_task_average"].get<double>()) <= 0.01;
  const bool r_ok = std::fabs(r - expected["length_accuracy_pearson"].get<double>()) <= 0.001;
  return {ea_ok && sum_ok && avg_ok && r_ok,
          fmt::format("EA(o3) {:.3f} [{}], max |EA+CA+KA| {:.1e} over {} rows [{}], avg {:.2f} [{}], "
                      "Pearson r {:.6f} over {} models vs {} [{}]",
                      o3.EA, ea_ok ? "ok" : "off", worst_sum, lang_rows.size(), sum_ok ? "ok" : "off", avg,
                      avg_ok ? "ok" : "off", r, len.size(), expected["length_accuracy_pearson"].get<double>(),
                      r_ok ? "ok" : "off")};
}

Verdict bitmap_exactness(const Context& ctx) {
  const auto& store = *ctx.resources.fonts;
  int bad_glyphs = 0, glyphs = 0;
  const auto& hzk = store.hzk16_bytes();
  for (std::size_t off = 0; off + 32 <= hzk.size(); off += 32, ++glyphs) {
    const auto enc = encode_hzk16(decode_hzk16(hzk.data() + off));
    bad_glyphs += !std::equal(enc.begin(), enc.end(), hzk.begin() + static_cast<long>(off));
  }
  const auto& asc = store.asc16_bytes();
  for (std::size_t off = 0; off + 16 <= asc.size(); off += 16, ++glyphs) {
    const auto enc = encode_asc16(decode_asc16(asc.data() + off));
    bad_glyphs += !std::equal(enc.begin(), enc.end(), asc.begin() + static_cast<long>(off));
  }
  int v3 = 0, bad_v3 = 0;
  for (const auto& i : ctx.dataset) {
    if (i.task != Task::DOT || i.metadata.value("variant", "") != "bitmap_to_char") continue;
    ++v3;
    const auto at = i.question.find("bitmap:\n");
    const auto shown = at == std::string::npos ? Bitmap16{} : Bitmap16::parse(i.question.substr(at + 8, 16 * 17 - 1));
    bad_v3 += !(shown == store.render(utf8::single(i.label.get<std::string>())));
  }
  return {bad_glyphs == 0 && bad_v3 == 0 && v3 > 0,
          fmt::format("{} glyphs re-encoded, {} differ; {} character-from-bitmap instances, {} differ from render",
                      glyphs, bad_glyphs, v3, bad_v3)};
}

Verdict golden_file() {
  const auto cases = load_golden();
  int bad = 0;
  std::string first;
  for (const auto& g : cases) {
    if (evaluate_sample(g.instance, g.output).correct != g.correct && bad++ == 0) first = " (first " + g.name + ")";
  }
  return {bad == 0 && cases.size() >= 60, fmt::format("{} cases, {} verdicts differ{}", cases.size(), bad, first)};
}

Verdict harness_checks() {
  TempDir dir("acceptance_harness");
  std::string detail;
  bool pass = true;
  for (const auto& c : harness_contract(dir.path())) {
    pass &= c.passed;
    detail += (detail.empty() ? "" : "; ") + c.name + " " + (c.passed ? "ok" : "FAILED") + " (" + c.detail + ")";
  }
  return {pass, detail};
}

}  // namespace

int main() {
  spdlog::set_level(spdlog::level::warn);
  int failed = 0;
  auto report = [&](int n, const std::string& name, const Verdict& v) {
    failed += !v.pass;
    std::cout << fmt::format("{} {:>2}. {}: {}", v.pass ? "PASS" : "FAIL", n, name, v.detail) << std::endl;
  };
  auto guarded = [&](int n, const std::string& name, auto&& fn) {
    try {
      report(n, name, fn());
    } catch (const std::exception& e) {
      report(n, name, {false, std::string("exception: ") + e.what()});
    }
  };

  guarded(1, "Hangul round trip", hangul_round_trip);
  std::unique_ptr<Context> ctx;
  try {
    ctx = std::make_unique<Context>();
  } catch (const std::exception& e) {
    std::cout << "dataset generation failed: " << e.what() << std::endl;
  }
  auto with_ctx = [&](auto fn) {
    return [&, fn]() -> Verdict {
      if (!ctx) return {false, "no dataset"};
      return fn(*ctx);
    };
  };
  guarded(2, "Ground-truth integrity", with_ctx([](Context& c) { return self_test_integrity(c); }));
  guarded(3, "Generator-oracle audit", with_ctx([](Context& c) { return oracle_audit(c); }));
  guarded(4, "Scorer vs brute force", scorer_equivalence);
  guarded(5, "Reward formulas", reward_table_check);
  guarded(6, "Dataset shape", with_ctx([](Context& c) { return dataset_shape(c); }));
  guarded(7, "Report arithmetic", report_arithmetic);
  guarded(8, "Bitmap bit-exactness", with_ctx([](Context& c) { return bitmap_exactness(c); }));
  guarded(9, "Scoring golden file", golden_file);
  guarded(10, "Harness contract", harness_checks);

  std::cout << fmt::format("{} of 10 criteria passed", 10 - failed) << std::endl;
  return failed == 0 ? 0 : 1;
}

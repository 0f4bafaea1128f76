#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tokbench/instance.h"

namespace tokbench {

// One scored instance, reduced to what aggregation needs.
struct Outcome {
  std::string instance_id;
  Task task = Task::FREQ;
  Language language = Language::en;
  bool correct = false;
  std::optional<int> length;  // LENOP target or sentence length
  std::string subtask;        // LENOP recognition / generation
};

enum class Slice { task, language, task_language, length };

struct AccuracyCell {
  std::string model;
  std::string slice;  // "FREQ", "en", "FREQ/en" or a bucket start
  int n = 0;
  double accuracy = 0.0;
};

// Cells are sorted by slice key; empty slices are omitted.
std::vector<AccuracyCell> accuracy_by(const std::string& model, const std::vector<Outcome>& outcomes, Slice slice,
                                      int bucket_width = 10);

// Unweighted mean of the cell accuracies; nullopt when empty.
std::optional<double> unweighted_mean(const std::vector<double>& values);

struct AdvantageTriple {
  double A_EN = 0, A_ZH = 0, A_KO = 0;
  double EA = 0, CA = 0, KA = 0;
};

AdvantageTriple language_advantage(double a_en, double a_zh, double a_ko);
// Population standard deviation of the three accuracies.
double uniformity(double a_en, double a_zh, double a_ko);

struct CurvePoint {
  int bucket_start = 0;
  int n = 0;
  double accuracy = 0.0;
  double smoothed = 0.0;
};

// LENOP outcomes of one subtask bucketed by length; empty buckets are omitted.
std::vector<CurvePoint> length_curve(const std::vector<Outcome>& outcomes, const std::string& subtask,
                                     int bucket_width, int window = 5);
// Centered moving average over the available neighbours.
std::vector<double> moving_average(const std::vector<double>& values, int window);

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y);

struct WelchResult {
  double t = 0;
  double df = 0;
  std::optional<double> p_value;  // two-sided
};

WelchResult welch_t_test(double mean1, double var1, double n1, double mean2, double var2, double n2);
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

struct TaskValidity {
  std::string task;
  double full_accuracy = 0;
  double sample_accuracy = 0;
  WelchResult test;
};

struct SampleValidity {
  double mae = 0;
  std::optional<double> pearson_r;
  std::vector<TaskValidity> tasks;
};

// Keys are task names; values are per-instance correctness.
SampleValidity sample_validity(const std::map<std::string, std::vector<bool>>& full,
                               const std::map<std::string, std::vector<bool>>& sample);

// ---- per-model summaries (the scoring module's summary.json) --------------

struct Tally {
  int n = 0;
  int correct = 0;
  double accuracy() const { return n > 0 ? static_cast<double>(correct) / n : 0.0; }
};

struct ModelSummary {
  std::string model;
  Tally overall;
  std::map<std::string, Tally> by_task;
  std::map<std::string, Tally> by_language;
  std::map<std::string, Tally> by_task_language;  // "FREQ/en"
  std::optional<double> mean_output_chars;
  std::vector<Outcome> lenop_points;

  Json to_json() const;
  static ModelSummary from_json(const Json& j);

  // Percent accuracy of a language as the unweighted mean of its task accuracies.
  std::optional<double> language_accuracy(Language lang) const;
  // Unweighted mean of task accuracies in percent.
  std::optional<double> task_average() const;
};

ModelSummary summarize(const std::string& model, const std::vector<Outcome>& outcomes,
                       std::optional<double> mean_output_chars);

// Pearson r between mean output length and overall accuracy across models.
std::optional<double> length_accuracy_correlation(const std::vector<ModelSummary>& models);

struct ReportOptions {
  int bucket_width = 10;
  int window = 5;
  bool svg = false;
};

// Writes accuracy_matrix.csv, language_advantage.csv, uniformity_ranking.csv,
// length_curves.csv, report.json and optional SVG charts; returns the files written.
std::vector<std::filesystem::path> write_report(const std::vector<ModelSummary>& models,
                                                const std::filesystem::path& out_dir, const ReportOptions& options);

}  // namespace tokbench

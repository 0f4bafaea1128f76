#include "tokbench/report.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include <boost/math/distributions/students_t.hpp>
#include <fmt/format.h>

#include "tokbench/errors.h"

namespace tokbench {

namespace {

std::string slice_key(const Outcome& o, Slice slice, int bucket_width) {
  switch (slice) {
    case Slice::task: return std::string(to_string(o.task));
    case Slice::language: return std::string(to_string(o.language));
    case Slice::task_language: return std::string(to_string(o.task)) + "/" + std::string(to_string(o.language));
    case Slice::length:
      if (!o.length) return "";
      return std::to_string((*o.length / bucket_width) * bucket_width);
  }
  return "";
}

}  // namespace

std::vector<AccuracyCell> accuracy_by(const std::string& model, const std::vector<Outcome>& outcomes, Slice slice,
                                      int bucket_width) {
  std::map<std::string, Tally> groups;
  for (const auto& o : outcomes) {
    const std::string key = slice_key(o, slice, bucket_width);
    if (key.empty()) continue;
    auto& t = groups[key];
    ++t.n;
    t.correct += o.correct ? 1 : 0;
  }
  std::vector<AccuracyCell> cells;
  for (const auto& [key, t] : groups) cells.push_back({model, key, t.n, t.accuracy()});
  return cells;
}

std::optional<double> unweighted_mean(const std::vector<double>& values) {
  if (values.empty()) return std::nullopt;
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

AdvantageTriple language_advantage(double a_en, double a_zh, double a_ko) {
  return {a_en, a_zh, a_ko, a_en - (a_zh + a_ko) / 2, a_zh - (a_en + a_ko) / 2, a_ko - (a_en + a_zh) / 2};
}

double uniformity(double a_en, double a_zh, double a_ko) {
  const double mean = (a_en + a_zh + a_ko) / 3;
  const double ss = (a_en - mean) * (a_en - mean) + (a_zh - mean) * (a_zh - mean) + (a_ko - mean) * (a_ko - mean);
  return std::sqrt(ss / 3);
}

std::vector<double> moving_average(const std::vector<double>& values, int window) {
  const int half = std::max(window, 1) / 2;
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::size_t lo = i >= static_cast<std::size_t>(half) ? i - half : 0;
    const std::size_t hi = std::min(values.size() - 1, i + half);
    double sum = 0;
    for (std::size_t k = lo; k <= hi; ++k) sum += values[k];
    out[i] = sum / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<CurvePoint> length_curve(const std::vector<Outcome>& outcomes, const std::string& subtask,
                                     int bucket_width, int window) {
  std::vector<Outcome> selected;
  for (const auto& o : outcomes) {
    if (o.task == Task::LENOP && o.length && (subtask.empty() || o.subtask == subtask)) selected.push_back(o);
  }
  std::vector<CurvePoint> points;
  for (const auto& c : accuracy_by("", selected, Slice::length, bucket_width)) {
    points.push_back({std::stoi(c.slice), c.n, c.accuracy, 0.0});
  }
  std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) { return a.bucket_start < b.bucket_start; });
  std::vector<double> acc;
  for (const auto& p : points) acc.push_back(p.accuracy);
  const auto smooth = moving_average(acc, window);
  for (std::size_t i = 0; i < points.size(); ++i) points[i].smoothed = smooth[i];
  return points;
}

std::optional<double> pearson(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0 || syy == 0) return std::nullopt;
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

WelchResult welch_t_test(double mean1, double var1, double n1, double mean2, double var2, double n2) {
  WelchResult r;
  if (n1 < 2 || n2 < 2) return r;
  const double a = var1 / n1, b = var2 / n2;
  const double se2 = a + b;
  if (se2 <= 0) return r;
  r.t = (mean1 - mean2) / std::sqrt(se2);
  r.df = se2 * se2 / (a * a / (n1 - 1) + b * b / (n2 - 1));
  const boost::math::students_t dist(r.df);
  r.p_value = 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(r.t)));
  return r;
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
  auto stats = [](const std::vector<double>& v) {
    const double n = static_cast<double>(v.size());
    const double m = n > 0 ? std::accumulate(v.begin(), v.end(), 0.0) / n : 0.0;
    double ss = 0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::make_tuple(m, n > 1 ? ss / (n - 1) : 0.0, n);
  };
  const auto [m1, v1, n1] = stats(a);
  const auto [m2, v2, n2] = stats(b);
  return welch_t_test(m1, v1, n1, m2, v2, n2);
}

SampleValidity sample_validity(const std::map<std::string, std::vector<bool>>& full,
                               const std::map<std::string, std::vector<bool>>& sample) {
  SampleValidity out;
  std::vector<double> fa, sa;
  for (const auto& [task, f] : full) {
    auto it = sample.find(task);
    if (it == sample.end() || f.empty() || it->second.empty()) continue;
    const std::vector<double> a(f.begin(), f.end()), b(it->second.begin(), it->second.end());
    TaskValidity tv{task, unweighted_mean(a).value(), unweighted_mean(b).value(), welch_t_test(a, b)};
    fa.push_back(tv.full_accuracy);
    sa.push_back(tv.sample_accuracy);
    out.tasks.push_back(std::move(tv));
  }
  double err = 0;
  for (std::size_t i = 0; i < fa.size(); ++i) err += std::fabs(fa[i] - sa[i]);
  out.mae = fa.empty() ? 0 : err / static_cast<double>(fa.size());
  out.pearson_r = pearson(fa, sa);
  return out;
}

// ---- summaries -------------------------------------------------------------

namespace {

Json tally_json(const Tally& t) { return Json{{"n", t.n}, {"correct", t.correct}}; }

Tally tally_from(const Json& j) { return {j.at("n").get<int>(), j.at("correct").get<int>()}; }

Json tallies_json(const std::map<std::string, Tally>& m) {
  Json j = Json::object();
  for (const auto& [k, t] : m) j[k] = tally_json(t);
  return j;
}

std::map<std::string, Tally> tallies_from(const Json& j) {
  std::map<std::string, Tally> m;
  for (const auto& [k, v] : j.items()) m[k] = tally_from(v);
  return m;
}

void add(Tally& t, bool correct) {
  ++t.n;
  t.correct += correct ? 1 : 0;
}

}  // namespace

Json ModelSummary::to_json() const {
  Json j;
  j["model"] = model;
  j["n"] = overall.n;
  j["correct"] = overall.correct;
  j["by_task"] = tallies_json(by_task);
  j["by_language"] = tallies_json(by_language);
  j["by_task_language"] = tallies_json(by_task_language);
  j["mean_output_chars"] = mean_output_chars ? Json(*mean_output_chars) : Json(nullptr);
  Json pts = Json::array();
  for (const auto& o : lenop_points) {
    pts.push_back({{"id", o.instance_id},
                   {"language", std::string(to_string(o.language))},
                   {"subtask", o.subtask},
                   {"length", o.length.value_or(0)},
                   {"correct", o.correct}});
  }
  j["lenop_points"] = std::move(pts);
  return j;
}

ModelSummary ModelSummary::from_json(const Json& j) {
  ModelSummary s;
  try {
    s.model = j.at("model").get<std::string>();
    s.overall = {j.at("n").get<int>(), j.at("correct").get<int>()};
    s.by_task = tallies_from(j.at("by_task"));
    s.by_language = tallies_from(j.value("by_language", Json::object()));
    s.by_task_language = tallies_from(j.value("by_task_language", Json::object()));
    if (j.contains("mean_output_chars") && j["mean_output_chars"].is_number()) {
      s.mean_output_chars = j["mean_output_chars"].get<double>();
    }
    for (const auto& p : j.value("lenop_points", Json::array())) {
      Outcome o;
      o.instance_id = p.value("id", "");
      o.task = Task::LENOP;
      o.language = parse_language(p.at("language").get<std::string>());
      o.subtask = p.value("subtask", "");
      o.length = p.at("length").get<int>();
      o.correct = p.at("correct").get<bool>();
      s.lenop_points.push_back(std::move(o));
    }
  } catch (const Json::exception& e) {
    throw ResourceError(std::string("malformed summary: ") + e.what());
  }
  return s;
}

std::optional<double> ModelSummary::language_accuracy(Language lang) const {
  std::vector<double> acc;
  const std::string suffix = "/" + std::string(to_string(lang));
  for (const auto& [key, t] : by_task_language) {
    if (t.n > 0 && key.size() > suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0) {
      acc.push_back(100.0 * t.accuracy());
    }
  }
  if (acc.empty()) {
    auto it = by_language.find(std::string(to_string(lang)));
    if (it == by_language.end() || it->second.n == 0) return std::nullopt;
    return 100.0 * it->second.accuracy();
  }
  return unweighted_mean(acc);
}

std::optional<double> ModelSummary::task_average() const {
  std::vector<double> acc;
  for (const auto& [task, t] : by_task) {
    if (t.n > 0) acc.push_back(100.0 * t.accuracy());
  }
  return unweighted_mean(acc);
}

ModelSummary summarize(const std::string& model, const std::vector<Outcome>& outcomes,
                       std::optional<double> mean_output_chars) {
  ModelSummary s;
  s.model = model;
  s.mean_output_chars = mean_output_chars;
  for (const auto& o : outcomes) {
    add(s.overall, o.correct);
    add(s.by_task[std::string(to_string(o.task))], o.correct);
    add(s.by_language[std::string(to_string(o.language))], o.correct);
    add(s.by_task_language[std::string(to_string(o.task)) + "/" + std::string(to_string(o.language))], o.correct);
    if (o.task == Task::LENOP && o.length) s.lenop_points.push_back(o);
  }
  return s;
}

std::optional<double> length_accuracy_correlation(const std::vector<ModelSummary>& models) {
  std::vector<double> x, y;
  for (const auto& m : models) {
    const auto avg = m.task_average();
    if (!m.mean_output_chars || !avg) continue;
    x.push_back(*m.mean_output_chars);
    y.push_back(*avg);
  }
  return pearson(x, y);
}

}  // namespace tokbench

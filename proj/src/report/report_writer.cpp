#include <algorithm>
#include <fstream>

#include <fmt/format.h>

#include "tokbench/errors.h"
#include "tokbench/report.h"

namespace tokbench {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot write " + path.string());
  return out;
}

std::string cell(std::optional<double> v) { return v ? fmt::format("{:.2f}", *v) : ""; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

struct Series {
  std::string label;
  std::vector<CurvePoint> points;
};

void write_svg(const std::filesystem::path& path, const std::string& title, const std::vector<Series>& series) {
  constexpr double kW = 640, kH = 400, kL = 50, kR = 150, kT = 30, kB = 40;
  int max_x = 1;
  for (const auto& s : series) {
    for (const auto& p : s.points) max_x = std::max(max_x, p.bucket_start);
  }
  auto px = [&](double x) { return kL + (kW - kL - kR) * x / max_x; };
  auto py = [&](double y) { return kH - kB - (kH - kT - kB) * y; };
  static const char* const kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                        "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  auto out = open_out(path);
  out << fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" "
                     "font-size=\"11\">\n",
                     kW, kH);
  out << fmt::format("<text x=\"{}\" y=\"18\" font-size=\"14\">{}</text>\n", kL, title);
  out << fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", kL, py(0), px(max_x));
  out << fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", kL, py(0), py(1));
  for (int k = 0; k <= 4; ++k) {
    out << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.2f}</text>\n", kL - 4, py(k / 4.0) + 4, k / 4.0);
  }
  out << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">length</text>\n", px(max_x / 2.0), kH - 8);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kColors[i % 10];
    std::string pts;
    for (const auto& p : series[i].points) pts += fmt::format("{:.1f},{:.1f} ", px(p.bucket_start), py(p.smoothed));
    out << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color, pts);
    out << fmt::format("<text x=\"{}\" y=\"{}\" fill=\"{}\">{}</text>\n", kW - kR + 10, kT + 14 * (i + 1), color,
                       series[i].label);
  }
  out << "</svg>\n";
}

}  // namespace

std::vector<std::filesystem::path> write_report(const std::vector<ModelSummary>& models,
                                                const std::filesystem::path& out_dir, const ReportOptions& options) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;

  {
    const auto path = out_dir / "accuracy_matrix.csv";
    auto out = open_out(path);
    out << "model";
    for (auto t : kTasks) out << ',' << to_string(t);
    out << ",Avg\n";
    for (const auto& m : models) {
      out << csv_field(m.model);
      for (auto t : kTasks) {
        auto it = m.by_task.find(std::string(to_string(t)));
        out << ',' << (it != m.by_task.end() && it->second.n > 0 ? cell(100.0 * it->second.accuracy()) : "");
      }
      out << ',' << cell(m.task_average()) << '\n';
    }
    written.push_back(path);
  }

  struct Row {
    std::string model;
    std::optional<double> en, zh, ko;
  };
  std::vector<Row> rows;
  for (const auto& m : models) {
    rows.push_back({m.model, m.language_accuracy(Language::en), m.language_accuracy(Language::zh),
                    m.language_accuracy(Language::ko)});
  }
  {
    const auto path = out_dir / "language_advantage.csv";
    auto out = open_out(path);
    out << "model,A_EN,A_ZH,A_KO,EA,CA,KA,uniformity\n";
    for (const auto& r : rows) {
      out << csv_field(r.model) << ',' << cell(r.en) << ',' << cell(r.zh) << ',' << cell(r.ko);
      if (r.en && r.zh && r.ko) {
        const auto a = language_advantage(*r.en, *r.zh, *r.ko);
        out << fmt::format(",{:.3f},{:.3f},{:.3f},{:.3f}\n", a.EA, a.CA, a.KA, uniformity(*r.en, *r.zh, *r.ko));
      } else {
        out << ",,,,\n";
      }
    }
    written.push_back(path);
  }
  {
    const auto path = out_dir / "uniformity_ranking.csv";
    auto out = open_out(path);
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& r : rows) {
      if (r.en && r.zh && r.ko) ranked.emplace_back(uniformity(*r.en, *r.zh, *r.ko), r.model);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out << "rank,model,uniformity\n";
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      out << fmt::format("{},{},{:.3f}\n", i + 1, csv_field(ranked[i].second), ranked[i].first);
    }
    written.push_back(path);
  }

  std::map<std::string, std::vector<Series>> charts;
  {
    const auto path = out_dir / "length_curves.csv";
    auto out = open_out(path);
    out << "model,subtask,bucket_start,n,accuracy,smoothed\n";
    for (const auto& m : models) {
      for (const std::string sub : {"recognition", "generation"}) {
        auto pts = length_curve(m.lenop_points, sub, options.bucket_width, options.window);
        for (const auto& p : pts) {
          out << fmt::format("{},{},{},{},{:.4f},{:.4f}\n", csv_field(m.model), sub, p.bucket_start, p.n, p.accuracy,
                             p.smoothed);
        }
        if (!pts.empty()) charts[sub].push_back({m.model, std::move(pts)});
      }
    }
    written.push_back(path);
  }

  {
    Json report;
    Json list = Json::array();
    for (std::size_t i = 0; i < models.size(); ++i) {
      const auto& m = models[i];
      Json e;
      e["model"] = m.model;
      e["n"] = m.overall.n;
      e["task_average"] = m.task_average() ? Json(*m.task_average()) : Json(nullptr);
      e["mean_output_chars"] = m.mean_output_chars ? Json(*m.mean_output_chars) : Json(nullptr);
      for (const auto& [key, v] : {std::pair{"A_EN", rows[i].en}, {"A_ZH", rows[i].zh}, {"A_KO", rows[i].ko}}) {
        e[key] = v ? Json(*v) : Json(nullptr);
      }
      list.push_back(std::move(e));
    }
    report["models"] = std::move(list);
    const auto r = length_accuracy_correlation(models);
    report["length_accuracy_pearson"] = r ? Json(*r) : Json(nullptr);
    if (!r) report["length_accuracy_note"] = "undefined: fewer than two models with output lengths, or zero variance";
    const auto path = out_dir / "report.json";
    auto out = open_out(path);
    out << report.dump(2) << '\n';
    written.push_back(path);
  }

  if (options.svg) {
    for (const auto& [sub, series] : charts) {
      const auto path = out_dir / ("length_curve_" + sub + ".svg");
      write_svg(path, "LENOP " + sub + " accuracy (smoothed)", series);
      written.push_back(path);
    }
  }
  return written;
}

}  // namespace tokbench

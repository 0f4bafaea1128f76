#include <fstream>

#include "common.h"
#include "tokbench/utf8.h"

namespace tokbench {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    cols.push_back(line.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return cols;
    start = pos + 1;
  }
}

// RFC 4180 fields on a single line.
std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  return in;
}

}  // namespace

const std::string& Topic::in(Language lang) const {
  switch (lang) {
    case Language::zh: return zh;
    case Language::ko: return ko;
    default: return en;
  }
}

std::vector<Topic> load_topics(const std::filesystem::path& path) {
  auto in = open(path);
  std::vector<Topic> topics;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 4 || cols[0].empty() || cols[1].empty() || cols[2].empty()) {
      throw ResourceError(fmt::format("{}:{}: expected en<TAB>zh<TAB>ko<TAB>domain", path.string(), lineno));
    }
    topics.push_back({cols[0], cols[1], cols[2], cols[3]});
  }
  return topics;
}

std::vector<RiddleEntry> load_riddle_csv(const std::filesystem::path& path) {
  auto in = open(path);
  std::vector<RiddleEntry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = parse_csv_line(line);
    if (lineno == 1 && f.size() == 3 && f[0] == "word") continue;
    if (f.size() != 3 || f[0].empty() || f[2].empty()) {
      throw ResourceError(fmt::format("{}:{}: expected word,gloss,theme", path.string(), lineno));
    }
    entries.push_back({f[0], f[1], f[2]});
  }
  return entries;
}

std::vector<ExternalRiddle> load_external_riddles(const std::filesystem::path& path, Language lang) {
  std::vector<ExternalRiddle> out;
  int lineno = 0;
  for (const auto& j : read_jsonl(path)) {
    ++lineno;
    const std::string where = fmt::format("{} record {}", path.string(), lineno);
    if (!j.is_object() || !j.contains("question") || !j.contains("answer") || !j["question"].is_string() ||
        !j["answer"].is_string()) {
      throw ResourceError(where + ": expected {question, answer, language}");
    }
    ExternalRiddle r{j["question"].get<std::string>(), j["answer"].get<std::string>(), lang};
    if (j.contains("language") && parse_language(j["language"].get<std::string>()) != lang) {
      throw ResourceError(where + ": language is not " + std::string(to_string(lang)));
    }
    if (r.question.empty() || normalize_answer(r.answer).empty()) {
      throw ResourceError(where + ": empty question or answer");
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string hangul_initials(std::string_view word) {
  std::string out;
  for (char32_t cp : utf8::decode(word)) out += utf8::encode(decompose_hangul(cp).initial);
  return out;
}

}  // namespace tokbench

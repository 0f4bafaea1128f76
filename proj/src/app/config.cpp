#include <fstream>

#include <fmt/format.h>

#include "tokbench/errors.h"
#include "tokbench/pipeline.h"

namespace tokbench {

const std::vector<std::string> kResourceKeys = {
    "en_corpus", "zh_corpus",  "ko_corpus", "zh_sentences", "zh_components", "hzk16",      "asc16",      "hangul_hex",
    "en_homoglyphs", "ko_digits", "zh_martian", "topics", "ko_riddles", "en_riddles", "zh_riddles", "dot_inventory"};

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::map<int, int> parse_distribution(const std::string& v) {
  std::map<int, int> out;
  std::size_t start = 0;
  while (start < v.size()) {
    auto end = v.find(',', start);
    if (end == std::string::npos) end = v.size();
    const std::string item = trim(v.substr(start, end - start));
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("expected length:count pairs, got \"" + v + "\"");
    out[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
    start = end + 1;
  }
  return out;
}

}  // namespace

Config Config::defaults(const std::filesystem::path& root) {
  Config c;
  c.root = root;
  c.values = {{"en_corpus", "resources/corpus/en_words.txt"},
              {"zh_corpus", "resources/corpus/zh_chars.txt"},
              {"ko_corpus", "resources/corpus/ko_syllables.txt"},
              {"zh_sentences", "resources/corpus/zh_sentences.txt"},
              {"zh_components", "resources/components/zh_components.tsv"},
              {"hzk16", "resources/fonts/HZK16"},
              {"asc16", "resources/fonts/ASC16"},
              {"hangul_hex", "resources/fonts/hangul16.hex"},
              {"en_homoglyphs", "resources/variants/en_homoglyphs.tsv"},
              {"ko_digits", "resources/variants/ko_digits.tsv"},
              {"zh_martian", "resources/variants/zh_martian.tsv"},
              {"topics", "resources/topics.tsv"},
              {"ko_riddles", "resources/riddles/ko_riddles.csv"},
              {"en_riddles", "resources/riddles/en_riddles.jsonl"},
              {"zh_riddles", "resources/riddles/zh_riddles.jsonl"},
              {"dot_inventory", "resources/dot_inventory.tsv"}};
  return c;
}

void Config::set(const std::string& key, const std::string& value) {
  try {
    if (key == "seed") {
      seed = std::stoull(value);
    } else if (key == "count") {
      count = std::stoi(value);
    } else if (key == "dot_count") {
      dot_count = std::stoi(value);
    } else if (key == "ridl_ko_distribution") {
      ridl_ko_distribution = parse_distribution(value);
    } else if (key == "out_dir") {
      out_dir = value;
    } else {
      values[key] = value;
    }
  } catch (const std::logic_error&) {
    throw DomainError(fmt::format("bad value for {}: \"{}\"", key, value));
  }
}

Config Config::load(const std::filesystem::path& file, const std::filesystem::path& root) {
  Config c = defaults(root);
  std::ifstream in(file);
  if (!in) throw ResourceError("cannot open config " + file.string());
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ResourceError(fmt::format("{}:{}: expected key = value", file.string(), lineno));
    c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return c;
}

std::filesystem::path Config::resource(const std::string& key) const {
  auto it = values.find(key);
  if (it == values.end()) throw NotFoundError("config has no entry for " + key);
  const std::filesystem::path p(it->second);
  return p.is_absolute() ? p : root / p;
}

}  // namespace tokbench

#pragma once

// Re-derives every instance label from the instance text and the raw resource
// files, without calling library code.

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "oracles.h"

namespace oracle {

using Json = nlohmann::ordered_json;

class Auditor {
 public:
  explicit Auditor(const std::filesystem::path& root)
      : jamo_(root / "tests" / "fixtures" / "conjoining_jamo.tsv") {
    const auto res = root / "resources";
    for (const auto& row : tsv(res / "components" / "zh_components.tsv")) {
      components_[row.at(0)].push_back(split(row.at(1), ','));
    }
    for (const auto* name : {"en_homoglyphs.tsv", "ko_digits.tsv", "zh_martian.tsv"}) {
      for (const auto& row : tsv(res / "variants" / name)) {
        for (const auto& v : split(row.at(1), ',')) restore_[v] = row.at(0);
      }
    }
    for (const auto* lang : {"en", "zh"}) {
      std::ifstream in(res / "riddles" / (std::string(lang) + "_riddles.jsonl"));
      std::string line;
      while (std::getline(in, line)) {
        if (!line.empty()) riddles_[lang].push_back(Json::parse(line));
      }
    }
  }

  // Empty when the label checks out, else a description of the mismatch.
  std::optional<std::string> audit(const Json& inst) const {
    try {
      return check(inst);
    } catch (const std::exception& e) {
      return std::string("audit exception: ") + e.what();
    }
  }

  const Jamo& jamo() const { return jamo_; }

 private:
  static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
      if (c == sep) {
        out.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    out.push_back(cur);
    return out;
  }

  static std::vector<std::vector<std::string>> tsv(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw std::runtime_error("cannot open " + p.string());
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      rows.push_back(split(line, '\t'));
    }
    return rows;
  }

  static std::vector<std::string> units(const std::string& lang, const std::string& text) {
    return lang == "en" ? words(text) : chars(text);
  }

  static std::string joined(const std::string& lang, const std::vector<std::string>& u) {
    return join(u, lang == "en" ? " " : "");
  }

  static bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

  static std::optional<std::string> fail(const std::string& why) { return why; }

  std::string category(const std::string& ch) const {
    const char32_t c = code_point(ch);
    if (c >= '0' && c <= '9') return "digit";
    if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z')) return "latin";
    if ((c >= 0x391 && c <= 0x3A9) || (c >= 0x3B1 && c <= 0x3C9)) return "greek";
    if (c >= 0x4E00 && c <= 0x9FFF) return "hanzi";
    if (c >= 0xAC00 && c <= 0xD7A3) return "hangul";
    if ((c >= 0x3041 && c <= 0x3096) || (c >= 0x30A1 && c <= 0x30FA)) return "kana";
    return "symbol";
  }

  std::optional<std::string> check(const Json& inst) const {
    const std::string task = inst.at("task");
    const std::string lang = inst.at("language");
    const std::string q = inst.at("question");
    const Json& m = inst.at("metadata");
    const Json& label = inst.at("label");
    if (task == "FREQ") {
      const std::string text = m.at("text");
      if (!contains(q, text)) return fail("question lacks text");
      const auto u = units(lang, text);
      const int n = static_cast<int>(std::count(u.begin(), u.end(), m.at("target").get<std::string>()));
      if (label != std::to_string(n)) return fail("count " + std::to_string(n) + " != label");
      if (m.at("token_count") != u.size()) return fail("token_count mismatch");
      return {};
    }
    if (task == "LENOP") {
      if (m.at("subtask") == "recognition") {
        const std::string s = m.at("sentence");
        if (!contains(q, s)) return fail("question lacks sentence");
        const auto n = units(lang, s).size();
        if (label != std::to_string(n) || m.at("length") != n) return fail("length mismatch");
        return {};
      }
      const int target = m.at("target_length");
      if (label != std::to_string(target)) return fail("label != target_length");
      if (!contains(q, std::to_string(target)) || !contains(q, m.at("topic").get<std::string>())) {
        return fail("question lacks target or topic");
      }
      if (static_cast<int>(units(lang, m.at("witness")).size()) != target) return fail("witness length");
      return {};
    }
    if (task == "DIFF") {
      const auto s1 = m.at("seq1").get<std::vector<std::string>>();
      const auto s2 = m.at("seq2").get<std::vector<std::string>>();
      if (!contains(q, joined(lang, s1)) || !contains(q, joined(lang, s2))) return fail("question lacks sequences");
      auto a = multiset(s1), b = multiset(s2);
      std::vector<std::string> only1, only2;
      for (const auto& [k, v] : a) {
        for (int i = b[k]; i < v; ++i) only1.push_back(k);
      }
      for (const auto& [k, v] : b) {
        for (int i = a[k]; i < v; ++i) only2.push_back(k);
      }
      const std::string variant = m.at("variant");
      const std::string l = label;
      if (variant == "unchanged") return only1.empty() && only2.empty() && l == "yes" ? std::nullopt : fail("unchanged");
      if (variant == "add") return only1.empty() && only2 == std::vector{l} ? std::nullopt : fail("add");
      if (variant == "delete") return only2.empty() && only1 == std::vector{l} ? std::nullopt : fail("delete");
      if (variant == "modify") {
        return only2 == std::vector{l} && only1 == std::vector{m.at("removed").get<std::string>()} ? std::nullopt
                                                                                                     : fail("modify");
      }
      return fail("unknown variant");
    }
    if (task == "SORT") {
      std::vector<std::pair<int, std::string>> lens;
      for (const auto& [key, s] : m.at("sentences").items()) {
        if (!contains(q, key + ": " + s.get<std::string>())) return fail("question lacks sentence " + key);
        lens.emplace_back(static_cast<int>(units(lang, s).size()), key);
      }
      std::sort(lens.begin(), lens.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
      if (lens.size() != 3 || lens[0].first == lens[1].first || lens[1].first == lens[2].first) {
        return fail("lengths not distinct");
      }
      const std::string want = lens[0].second + lens[1].second + lens[2].second;
      return label == want ? std::nullopt : fail("order " + want);
    }
    if (task == "REORD") {
      const auto orig = m.at("original").get<std::vector<std::string>>();
      if (!contains(q, joined(lang, orig))) return fail("question lacks sequence");
      const auto perm = units(lang, label.get<std::string>());
      if (multiset(perm) != multiset(orig)) return fail("witness is not a permutation");
      return adjacency_free(orig, perm) ? std::nullopt : fail("witness keeps a neighbour");
    }
    if (task == "COMPC") {
      const auto u = m.at("units").get<std::vector<std::string>>();
      const std::string target = m.at("target");
      if (!contains(q, joined(lang, u)) || !contains(q, "\"" + target + "\"")) return fail("question mismatch");
      int n = 0;
      if (lang == "en") {
        n = letter_count(u, target.at(0));
      } else if (lang == "ko") {
        for (const auto& s : u) {
          const auto p = jamo_.parts(s);
          n += static_cast<int>(std::count(p.begin(), p.end(), target));
        }
      } else {
        for (const auto& s : u) {
          const auto& d = components_.at(s).front();
          n += static_cast<int>(std::count(d.begin(), d.end(), target));
        }
      }
      if (label != std::to_string(n) || m.at("target_count") != n) return fail("count " + std::to_string(n));
      return {};
    }
    if (task == "COMPM") {
      if (m.at("subtask") == "split") {
        const std::string token = m.at("token");
        if (!contains(q, token)) return fail("question lacks token");
        const auto options = label.get<std::vector<std::vector<std::string>>>();
        if (options.empty()) return fail("no options");
        for (const auto& o : options) {
          if (lang == "en") {
            if (join(o, "") != token || o.size() < 2 || o.size() > 4) return fail("split does not rebuild token");
            for (const auto& p : o) {
              if (p.size() < 2) return fail("short fragment");
            }
          } else if (lang == "ko") {
            if (o != jamo_.parts(token)) return fail("jamo mismatch");
          } else {
            const auto& all = components_.at(token);
            if (std::find(all.begin(), all.end(), o) == all.end()) return fail("option not in table");
          }
        }
        return {};
      }
      auto parts = m.at("parts").get<std::vector<std::string>>();
      const std::string l = label;
      for (const auto& p : parts) {
        if (!contains(q, p)) return fail("question lacks part " + p);
      }
      if (lang == "zh") {
        const auto& all = components_.at(l);
        for (const auto& d : all) {
          if (multiset(d) == multiset(parts)) return {};
        }
        return fail("parts do not decompose label");
      }
      std::sort(parts.begin(), parts.end());
      do {
        if ((lang == "en" ? join(parts, "") : jamo_.compose(parts)) == l) return {};
      } while (std::next_permutation(parts.begin(), parts.end()));
      return fail("no arrangement rebuilds label");
    }
    if (task == "DOT") {
      const std::string ch = m.at("character");
      const std::string cat = category(ch);
      if (m.at("category") != cat) return fail("category " + cat);
      const std::string variant = m.at("variant");
      if (variant == "char_to_category") {
        return label == cat && contains(q, ch) ? std::nullopt : fail("v1 label");
      }
      const auto at = q.find("bitmap:\n");
      if (at == std::string::npos) return fail("no bitmap");
      const auto rows = words(q.substr(at + 8));
      if (rows.size() != 16) return fail("bitmap rows");
      int lit = 0;
      for (const auto& r : rows) {
        if (r.size() != 16 || r.find_first_not_of("01") != std::string::npos) return fail("bitmap cells");
        lit += static_cast<int>(std::count(r.begin(), r.end(), '1'));
      }
      if (lit == 0) return fail("blank bitmap");
      if (variant == "bitmap_to_category") return label == cat ? std::nullopt : fail("v2 label");
      return label == ch && contains(q, cat) ? std::nullopt : fail("v3 label");
    }
    if (task == "RIDL") {
      if (lang == "ko") {
        const auto answers = label.get<std::vector<std::string>>();
        std::string initials;
        for (const auto& s : chars(answers.at(0))) initials += jamo_.parts(s).at(0);
        if (initials != m.at("initials") || !contains(q, initials)) return fail("initials " + initials);
        if (answers.at(0) != m.at("word")) return fail("source word not first");
        for (const auto& a : answers) {
          std::string ai;
          for (const auto& s : chars(a)) ai += jamo_.parts(s).at(0);
          if (ai != initials) return fail("alternate answer initials");
        }
        return chars(answers[0]).size() == m.at("syllables") ? std::nullopt : fail("syllable count");
      }
      const auto& r = riddles_.at(lang).at(m.at("source_index").get<std::size_t>());
      return label == r.at("answer") && contains(q, r.at("question").get<std::string>()) ? std::nullopt
                                                                                          : fail("riddle mismatch");
    }
    if (task == "VAR") {
      const std::string distorted = m.at("distorted");
      if (!contains(q, distorted)) return fail("question lacks text");
      const auto d = chars(distorted), o = chars(label.get<std::string>());
      if (d.size() != o.size()) return fail("length changed");
      std::vector<int> changed;
      for (std::size_t i = 0; i < d.size(); ++i) {
        if (d[i] == o[i]) continue;
        changed.push_back(static_cast<int>(i));
        auto it = restore_.find(d[i]);
        if (it == restore_.end() || it->second != o[i]) return fail("unrestorable substitution at " + std::to_string(i));
      }
      if (changed.empty()) return fail("no substitution");
      return changed == m.at("positions").get<std::vector<int>>() ? std::nullopt : fail("positions");
    }
    return fail("unknown task " + task);
  }

  Jamo jamo_;
  std::map<std::string, std::vector<std::vector<std::string>>> components_;
  std::map<std::string, std::string> restore_;
  std::map<std::string, std::vector<Json>> riddles_;
};

}  // namespace oracle

#include "tokbench/scoring.h"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "tokbench/errors.h"
#include "tokbench/generators.h"
#include "tokbench/utf8.h"

namespace tokbench {

namespace {

std::string trim(std::string_view s) {
  auto cps = utf8::decode(s);
  std::size_t a = 0, b = cps.size();
  while (a < b && is_space(cps[a])) ++a;
  while (b > a && is_space(cps[b - 1])) --b;
  return utf8::encode(std::u32string_view(cps).substr(a, b - a));
}

bool is_alnum_ascii(char c) {
  return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

std::string strip_spaces_lower(std::string_view s) {
  std::u32string out;
  for (char32_t cp : utf8::decode(s)) {
    if (!is_space(cp)) out.push_back(to_lower(cp));
  }
  return utf8::encode(out);
}

int count_occurrences(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return 0;
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos; pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

// Case-insensitive whole-word search for ASCII-bounded tokens.
bool contains_word(std::string_view text, std::string_view word) {
  const std::string t = ascii_lower(text), w = ascii_lower(word);
  if (w.empty()) return false;
  for (auto pos = t.find(w); pos != std::string::npos; pos = t.find(w, pos + 1)) {
    const bool left_ok = pos == 0 || !is_alnum_ascii(t[pos - 1]);
    const bool right_ok = pos + w.size() == t.size() || !is_alnum_ascii(t[pos + w.size()]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

bool affirmative(std::string_view prediction, Language lang) {
  if (contains_word(prediction, "yes")) return true;
  if (lang == Language::zh) {
    const auto cps = utf8::decode(prediction);
    for (std::size_t i = 0; i < cps.size(); ++i) {
      const bool negated = i > 0 && (cps[i - 1] == U'不' || cps[i - 1] == U'否');
      if (negated) continue;
      if (cps[i] == U'是') return true;
      if (i + 1 < cps.size() && ((cps[i] == U'相' && cps[i + 1] == U'同') || (cps[i] == U'一' && cps[i + 1] == U'致'))) {
        return true;
      }
    }
  }
  if (lang == Language::ko) {
    const auto cps = utf8::decode(trim(prediction));
    if (!cps.empty() && (cps[0] == U'네' || cps[0] == U'예')) return true;
  }
  return false;
}

ScoreOutcome verdict(bool correct, std::string_view extracted, std::string detail) {
  return {correct, std::string(extracted), std::move(detail)};
}

}  // namespace

std::string extract_answer(std::string_view raw) {
  static constexpr std::string_view kOpen = "<answer>", kClose = "</answer>";
  const auto close = raw.rfind(kClose);
  if (close != std::string_view::npos) {
    const auto open = raw.substr(0, close).rfind(kOpen);
    if (open != std::string_view::npos) return trim(raw.substr(open + kOpen.size(), close - open - kOpen.size()));
  }
  // Pair ** markers left to right; the last complete pair wins.
  std::vector<std::size_t> marks;
  for (auto pos = raw.find("**"); pos != std::string_view::npos; pos = raw.find("**", pos + 2)) marks.push_back(pos);
  if (marks.size() >= 2) {
    const std::size_t last_pair = (marks.size() / 2) * 2 - 2;
    const auto a = marks[last_pair] + 2, b = marks[last_pair + 1];
    return trim(raw.substr(a, b - a));
  }
  return "";
}

std::vector<double> numeric_literals(std::string_view text) {
  std::vector<double> out;
  std::size_t i = 0;
  auto digit = [&](std::size_t k) { return k < text.size() && text[k] >= '0' && text[k] <= '9'; };
  while (i < text.size()) {
    std::size_t start = i;
    bool sign = false;
    if ((text[i] == '+' || text[i] == '-') && (digit(i + 1) || (i + 2 < text.size() && text[i + 1] == '.' && digit(i + 2))) &&
        (i == 0 || !is_alnum_ascii(text[i - 1]))) {
      sign = true;
      ++i;
    }
    if (digit(i) || (text[i] == '.' && digit(i + 1))) {
      while (digit(i)) ++i;
      if (i < text.size() && text[i] == '.') {
        ++i;
        while (digit(i)) ++i;
      }
      out.push_back(std::stod(std::string(text.substr(start, i - start))));
      continue;
    }
    i = sign ? start + 1 : i + 1;
  }
  return out;
}

ScoreOutcome match_number(std::string_view label, std::string_view prediction) {
  const auto want = numeric_literals(label);
  if (want.empty()) return verdict(false, prediction, "label has no numeric literal");
  const auto got = numeric_literals(prediction);
  if (got.empty()) return verdict(false, prediction, "no number in prediction");
  const bool ok = std::fabs(got.back() - want.front()) < 1e-9;
  return verdict(ok, prediction, fmt::format("expected {}, got {}", want.front(), got.back()));
}

std::optional<int> target_length(const TaskInstance& instance) {
  const auto& m = instance.metadata;
  if (m.contains("target_length") && m["target_length"].is_number_integer()) return m["target_length"].get<int>();
  for (double v : numeric_literals(instance.question)) {
    if (v >= 0 && v == std::floor(v)) return static_cast<int>(v);
  }
  return std::nullopt;
}

ScoreOutcome sentence_length(std::string_view question, const TaskInstance& instance, std::string_view prediction) {
  std::optional<int> target;
  if (instance.metadata.contains("target_length")) {
    target = target_length(instance);
  } else {
    TaskInstance probe;
    probe.question = std::string(question);
    target = target_length(probe);
  }
  if (!target) return verdict(false, prediction, "target length unavailable");
  const auto n = static_cast<int>(tokenize_units(instance.language, prediction).size());
  return verdict(n == *target, prediction, fmt::format("target {}, counted {}", *target, n));
}

ScoreOutcome shuffle_tokens(const std::vector<std::string>& original, std::string_view prediction, Language lang) {
  if (trim(prediction).empty()) return verdict(false, prediction, "empty prediction");
  const auto units = tokenize_units(lang, prediction);
  auto a = original, b = units;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return verdict(false, prediction, "units differ from the original multiset");
  const int adjacent = adjacent_pair_count(original, units);
  return verdict(adjacent == 0, prediction, fmt::format("{} originally adjacent pair(s)", adjacent));
}

ScoreOutcome split_components(const std::vector<std::vector<std::string>>& options, std::string_view prediction) {
  // Components are matched inside separator-delimited segments so they cannot straddle a boundary.
  const auto segments = normalized_segments(prediction);
  auto occurrences = [&](const std::string& c) {
    int n = 0;
    for (const auto& seg : segments) n += count_occurrences(seg, c);
    return n;
  };
  for (std::size_t k = 0; k < options.size(); ++k) {
    std::map<std::string, int> need;
    for (const auto& c : options[k]) ++need[normalize_answer(c)];
    bool ok = !need.empty() && !segments.empty();
    for (const auto& [c, n] : need) ok = ok && !c.empty() && occurrences(c) >= n;
    if (ok) return verdict(true, prediction, fmt::format("matched option {}", k));
  }
  return verdict(false, prediction, "no option fully present");
}

ScoreOutcome diff_judge(const TaskInstance& instance, std::string_view prediction) {
  const auto labels = instance.label_strings();
  const std::string label = labels.empty() ? "" : labels.front();
  if (label == "yes") {
    const bool ok = affirmative(prediction, instance.language);
    return verdict(ok, prediction, ok ? "affirmative" : "no affirmative found");
  }
  std::vector<std::string> accepted = {label};
  if (instance.metadata.contains("removed")) accepted.push_back(instance.metadata["removed"].get<std::string>());
  for (const auto& tok : accepted) {
    const bool hit = instance.language == Language::en ? contains_word(prediction, tok)
                                                       : prediction.find(tok) != std::string_view::npos;
    if (hit) return verdict(true, prediction, "found " + tok);
  }
  return verdict(false, prediction, "differing token not found");
}

ScoreOutcome match_answer(const std::vector<std::string>& labels, std::string_view prediction) {
  const std::string p = normalize_answer(prediction);
  const std::string loose = strip_spaces_lower(prediction);
  for (const auto& l : labels) {
    const std::string nl = normalize_answer(l);
    // Labels made only of punctuation fall back to whitespace-insensitive matching.
    const bool hit = nl.empty() ? (!strip_spaces_lower(l).empty() && loose.find(strip_spaces_lower(l)) != std::string::npos)
                                : p.find(nl) != std::string::npos;
    if (hit) return verdict(true, prediction, "matched " + l);
  }
  return verdict(false, prediction, "no label found");
}

std::vector<std::string> reorder_original(const TaskInstance& instance) {
  if (!instance.metadata.contains("original")) throw DomainError("instance " + instance.id + " has no original sequence");
  return instance.metadata["original"].get<std::vector<std::string>>();
}

ScoreOutcome evaluate_sample(const TaskInstance& instance, std::string_view raw_output) {
  const std::string extracted = extract_answer(raw_output);
  if (extracted.empty()) return {false, "", "no answer extracted"};
  switch (instance.evaluation_type) {
    case EvalType::number: return match_number(instance.label_strings().at(0), extracted);
    case EvalType::length: return sentence_length(instance.question, instance, extracted);
    case EvalType::shuffle: return shuffle_tokens(reorder_original(instance), extracted, instance.language);
    case EvalType::split: return split_components(instance.label_options(), extracted);
    case EvalType::diff: return diff_judge(instance, extracted);
    case EvalType::match_answer: return match_answer(instance.label_strings(), extracted);
  }
  throw DomainError("unknown evaluation type for " + instance.id);
}

std::string reference_output(const TaskInstance& instance) {
  std::string answer;
  const auto& m = instance.metadata;
  switch (instance.evaluation_type) {
    case EvalType::length: answer = m.at("witness").get<std::string>(); break;
    case EvalType::shuffle:
      answer = join_units(instance.language, m.at("witness").get<std::vector<std::string>>());
      break;
    case EvalType::split: {
      const auto opts = instance.label_options();
      for (std::size_t i = 0; i < opts.at(0).size(); ++i) answer += (i ? ", " : "") + opts[0][i];
      break;
    }
    default: answer = instance.label_strings().at(0); break;
  }
  return "<answer>" + answer + "</answer>";
}

}  // namespace tokbench

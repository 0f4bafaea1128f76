#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <unordered_set>

#include "common.h"
#include "prompts.h"
#include "tokbench/utf8.h"

namespace tokbench {

using gen::consecutive;
using gen::length_pool;
using gen::make_instance;

std::string join_units(Language lang, const std::vector<std::string>& units) {
  std::string out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    if (i > 0 && lang == Language::en) out += ' ';
    out += units[i];
  }
  return out;
}

namespace {

void require_distinct(const Corpus& corpus, std::size_t needed) {
  if (corpus.items.size() < needed) {
    throw GenerationError(fmt::format("{} corpus has {} items, {} required", to_string(corpus.language),
                                      corpus.items.size(), needed));
  }
}

std::size_t code_points(std::string_view s) { return utf8::decode(s).size(); }

constexpr std::size_t kFreqMaxChars = 500;

}  // namespace

// ---- FREQ ------------------------------------------------------------------

std::vector<TaskInstance> gen_freq(const GenSpec& spec, const Corpus& corpus) {
  require_distinct(corpus, 20);
  Rng rng(spec.seed);
  const Language lang = spec.language;

  std::vector<int> counts;
  for (int c = 1; c <= 10; ++c) {
    for (int k = 0; k < spec.per_count; ++k) counts.push_back(c);
  }
  if (static_cast<int>(counts.size()) < spec.count) {
    throw GenerationError(fmt::format("FREQ: {} instances exceed {} per count", spec.count, spec.per_count));
  }
  rng.shuffle(counts);
  counts.resize(spec.count);

  const std::size_t head = std::min<std::size_t>(corpus.items.size(), lang == Language::en ? 20000 : 1000);
  std::vector<std::string> short_targets;
  // English distractors bucketed by length so the 500-character cap always holds.
  std::map<std::size_t, std::vector<std::string>> by_length;
  if (lang == Language::en) {
    for (std::size_t i = 0; i < head; ++i) {
      const auto& w = corpus.items[i];
      by_length[w.size()].push_back(w);
      if (i < 5000 && w.size() >= 3 && w.size() <= 8) short_targets.push_back(w);
    }
  }

  std::vector<TaskInstance> out;
  for (std::size_t idx = 0; idx < counts.size(); ++idx) {
    const int c = counts[idx];
    const int n = c * 10 + static_cast<int>(rng.below(lang == Language::en ? c + 1 : c * 10 + 1));
    std::string target;
    std::vector<std::string> distractor_pool;
    if (lang == Language::en) {
      target = rng.pick(short_targets);
      const long remaining = static_cast<long>(kFreqMaxChars) - c * static_cast<long>(target.size()) - (n - 1);
      const long per = remaining / (n - c);
      for (const auto& [len, words] : by_length) {
        if (static_cast<long>(len) > per) break;
        for (const auto& w : words) {
          if (w.find(target) == std::string::npos) distractor_pool.push_back(w);
        }
      }
      if (distractor_pool.size() < 10) {
        throw GenerationError(fmt::format("FREQ: no distractors fit {} tokens in {} characters", n, kFreqMaxChars));
      }
    } else {
      target = corpus.items[rng.below(head)];
    }
    std::vector<std::string> tokens(n);
    std::vector<bool> is_target(n, false);
    for (auto p : rng.sample_indices(n, c)) is_target[p] = true;
    for (int i = 0; i < n; ++i) {
      if (is_target[i]) {
        tokens[i] = target;
      } else if (lang == Language::en) {
        tokens[i] = rng.pick(distractor_pool);
      } else {
        do {
          tokens[i] = rng.pick(corpus.items);
        } while (tokens[i] == target);
      }
    }
    const std::string text = join_units(lang, tokens);
    if (code_points(text) > kFreqMaxChars) {
      throw GenerationError(fmt::format("FREQ: text of {} characters exceeds the cap", code_points(text)));
    }
    auto inst = make_instance(Task::FREQ, spec, idx, EvalType::number);
    inst.question = prompts::freq(lang, target, text);
    inst.label = std::to_string(c);
    inst.metadata["target"] = target;
    inst.metadata["target_count"] = c;
    inst.metadata["token_count"] = n;
    inst.metadata["text"] = text;
    out.push_back(std::move(inst));
  }
  return out;
}

// ---- LENOP -----------------------------------------------------------------

std::vector<TaskInstance> gen_lenop(const GenSpec& spec, const Corpus& corpus, const std::vector<Topic>& topics) {
  require_distinct(corpus, static_cast<std::size_t>(spec.max_length));
  Rng rng(spec.seed);
  const Language lang = spec.language;
  std::vector<TaskInstance> out;

  for (int n : length_pool(spec, rng)) {
    auto units = consecutive(corpus.items, n, rng);
    const std::string sentence = join_units(lang, units);
    auto inst = make_instance(Task::LENOP, spec, out.size(), EvalType::number);
    inst.question = prompts::length_count(lang, sentence);
    inst.label = std::to_string(n);
    inst.metadata["subtask"] = "recognition";
    inst.metadata["length"] = n;
    inst.metadata["sentence"] = sentence;
    out.push_back(std::move(inst));
  }

  const auto lengths = length_pool(spec, rng);
  if (topics.size() < lengths.size()) {
    throw GenerationError(fmt::format("LENOP: topic pool has {} entries, {} needed without replacement",
                                      topics.size(), lengths.size()));
  }
  const auto topic_idx = rng.sample_indices(topics.size(), lengths.size());
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    const int n = lengths[i];
    const std::string& topic = topics[topic_idx[i]].in(lang);
    auto inst = make_instance(Task::LENOP, spec, out.size(), EvalType::length);
    inst.question = prompts::length_generate(lang, n, topic);
    inst.label = std::to_string(n);
    inst.metadata["subtask"] = "generation";
    inst.metadata["target_length"] = n;
    inst.metadata["topic"] = topic;
    inst.metadata["witness"] = join_units(lang, consecutive(corpus.items, n, rng));
    out.push_back(std::move(inst));
  }
  return out;
}

// ---- DIFF ------------------------------------------------------------------

std::vector<TaskInstance> gen_diff(const GenSpec& spec, const Corpus& corpus) {
  require_distinct(corpus, static_cast<std::size_t>(spec.max_length) + 2);
  Rng rng(spec.seed);
  const Language lang = spec.language;
  static const char* const kVariants[] = {"unchanged", "add", "delete", "modify"};

  std::vector<std::pair<int, int>> pool;  // (length, variant)
  for (int n = spec.min_length; n <= spec.max_length; ++n) {
    for (int k = 0; k < spec.per_length; ++k) pool.emplace_back(n, k % 4);
  }
  if (static_cast<int>(pool.size()) < spec.count) {
    throw GenerationError(fmt::format("DIFF: {} instances exceed the per-length cap", spec.count));
  }
  rng.shuffle(pool);
  pool.resize(spec.count);

  std::vector<TaskInstance> out;
  for (const auto& [n, variant] : pool) {
    auto base = consecutive(corpus.items, n, rng);
    const std::unordered_set<std::string> present(base.begin(), base.end());
    if (present.size() != base.size()) throw GenerationError("DIFF: corpus window contains duplicate items");
    auto fresh = [&] {
      std::string t;
      do {
        t = rng.pick(corpus.items);
      } while (present.count(t) > 0);
      return t;
    };
    auto second = base;
    std::string label = "yes";
    auto inst = make_instance(Task::DIFF, spec, out.size(), EvalType::diff);
    if (variant == 1) {
      label = fresh();
      second.push_back(label);
    } else if (variant == 2) {
      const std::size_t k = rng.below(second.size());
      label = second[k];
      second.erase(second.begin() + static_cast<std::ptrdiff_t>(k));
    } else if (variant == 3) {
      const std::size_t k = rng.below(second.size());
      inst.metadata["removed"] = second[k];
      label = fresh();
      second[k] = label;
    }
    rng.shuffle(base);
    rng.shuffle(second);
    inst.question = prompts::diff(lang, join_units(lang, base), join_units(lang, second));
    inst.label = label;
    inst.metadata["variant"] = kVariants[variant];
    inst.metadata["seq1"] = base;
    inst.metadata["seq2"] = second;
    out.push_back(std::move(inst));
  }
  return out;
}

// ---- SORT ------------------------------------------------------------------

std::vector<int> sort_companion_lengths(int n) {
  std::vector<int> lens = {n, static_cast<int>(std::lround(n * 1.1)), static_cast<int>(std::lround(n * 0.9))};
  auto resolve = [&](int slot) {
    auto taken = [&](int v) {
      for (int j = 0; j < slot; ++j) {
        if (lens[j] == v) return true;
      }
      return v < 1;
    };
    if (!taken(lens[slot])) return true;
    const int base = lens[slot];
    for (int d : {1, -1, 2, -2}) {
      if (!taken(base + d)) {
        lens[slot] = base + d;
        return true;
      }
    }
    return false;
  };
  if (!resolve(1) || !resolve(2)) return {};
  return lens;
}

std::vector<TaskInstance> gen_sort(const GenSpec& spec, const Corpus& corpus) {
  const int longest = static_cast<int>(std::lround(spec.max_length * 1.1)) + 2;
  require_distinct(corpus, static_cast<std::size_t>(longest));
  Rng rng(spec.seed);
  const Language lang = spec.language;
  std::vector<TaskInstance> out;
  for (int n : length_pool(spec, rng)) {
    auto lens = sort_companion_lengths(n);
    while (lens.empty()) lens = sort_companion_lengths(n = rng.range(spec.min_length, spec.max_length));
    std::vector<int> order = {0, 1, 2};
    rng.shuffle(order);
    std::array<int, 3> letter_len{};
    std::array<std::string, 3> sentences;
    for (int j = 0; j < 3; ++j) {
      letter_len[j] = lens[order[j]];
      sentences[j] = join_units(lang, consecutive(corpus.items, letter_len[j], rng));
    }
    std::string label = "ABC";
    std::stable_sort(label.begin(), label.end(), [&](char a, char b) { return letter_len[a - 'A'] > letter_len[b - 'A']; });
    auto inst = make_instance(Task::SORT, spec, out.size(), EvalType::match_answer);
    inst.question = prompts::sort(lang, sentences[0], sentences[1], sentences[2]);
    inst.label = label;
    inst.metadata["base_length"] = n;
    inst.metadata["lengths"] = {{"A", letter_len[0]}, {"B", letter_len[1]}, {"C", letter_len[2]}};
    inst.metadata["sentences"] = {{"A", sentences[0]}, {"B", sentences[1]}, {"C", sentences[2]}};
    out.push_back(std::move(inst));
  }
  return out;
}

// ---- REORD -----------------------------------------------------------------

namespace {

std::set<std::pair<std::string, std::string>> neighbour_pairs(const std::vector<std::string>& seq) {
  std::set<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    pairs.insert(std::minmax(seq[i], seq[i + 1]));
  }
  return pairs;
}

std::optional<std::vector<std::string>> find_witness(const std::vector<std::string>& original, Rng& rng) {
  auto perm = original;
  for (int attempt = 0; attempt < 500; ++attempt) {
    rng.shuffle(perm);
    if (adjacency_free(original, perm)) return perm;
  }
  perm.clear();
  for (std::size_t i = 1; i < original.size(); i += 2) perm.push_back(original[i]);
  for (std::size_t i = 0; i < original.size(); i += 2) perm.push_back(original[i]);
  if (adjacency_free(original, perm)) return perm;
  return std::nullopt;
}

}  // namespace

int adjacent_pair_count(const std::vector<std::string>& original, const std::vector<std::string>& perm) {
  const auto pairs = neighbour_pairs(original);
  int count = 0;
  for (std::size_t i = 0; i + 1 < perm.size(); ++i) count += pairs.count(std::minmax(perm[i], perm[i + 1])) ? 1 : 0;
  return count;
}

bool adjacency_free(const std::vector<std::string>& original, const std::vector<std::string>& perm) {
  return adjacent_pair_count(original, perm) == 0;
}

std::vector<TaskInstance> gen_reord(const GenSpec& spec, const Corpus& corpus) {
  if (spec.min_length < 4) throw GenerationError("REORD needs sequences of at least 4 units");
  require_distinct(corpus, static_cast<std::size_t>(spec.max_length));
  Rng rng(spec.seed);
  const Language lang = spec.language;
  std::vector<TaskInstance> out;
  for (int n : length_pool(spec, rng)) {
    std::vector<std::string> units;
    std::optional<std::vector<std::string>> witness;
    for (int attempt = 0; attempt < 20 && !witness; ++attempt) {
      units = consecutive(corpus.items, n, rng);
      witness = find_witness(units, rng);
    }
    if (!witness) throw GenerationError(fmt::format("REORD: no adjacency-free permutation found for length {}", n));
    auto inst = make_instance(Task::REORD, spec, out.size(), EvalType::shuffle);
    inst.question = prompts::reorder(lang, join_units(lang, units));
    inst.label = join_units(lang, *witness);
    inst.metadata["original"] = units;
    inst.metadata["witness"] = *witness;
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace tokbench

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "tokbench/bitmap.h"
#include "tokbench/instance.h"
#include "tokbench/text.h"

namespace tokbench {

struct GenSpec {
  Language language = Language::en;
  std::uint64_t seed = 0;
  int count = 1000;       // instances per sub-task
  int min_length = 5;
  int max_length = 254;
  int per_length = 4;     // cap per target length
  int per_count = 100;    // FREQ cap per target count
};

struct Topic {
  std::string en, zh, ko, domain;
  const std::string& in(Language lang) const;
};

std::vector<Topic> load_topics(const std::filesystem::path& path);

struct RiddleEntry {
  std::string word;
  std::string gloss;
  std::string theme;
};

std::vector<RiddleEntry> load_riddle_csv(const std::filesystem::path& path);

struct ExternalRiddle {
  std::string question;
  std::string answer;
  Language language = Language::en;
};

// JSON-lines `{question, answer, language}`; entries for other languages are rejected.
std::vector<ExternalRiddle> load_external_riddles(const std::filesystem::path& path, Language lang);

struct VariantMap {
  HomoglyphTable en;         // Latin letters
  HomoglyphTable ko_digits;  // ASCII digits
  HomoglyphTable zh;         // Martian-text characters
};

// Joins units the way prompts show them: spaces for English, nothing otherwise.
std::string join_units(Language lang, const std::vector<std::string>& units);

// ---- token awareness -------------------------------------------------------

std::vector<TaskInstance> gen_freq(const GenSpec& spec, const Corpus& corpus);
// Recognition instances followed by generation instances.
std::vector<TaskInstance> gen_lenop(const GenSpec& spec, const Corpus& corpus, const std::vector<Topic>& topics);
std::vector<TaskInstance> gen_diff(const GenSpec& spec, const Corpus& corpus);
std::vector<TaskInstance> gen_sort(const GenSpec& spec, const Corpus& corpus);
std::vector<TaskInstance> gen_reord(const GenSpec& spec, const Corpus& corpus);

// Companion lengths for a SORT base length n, pairwise distinct; empty if unresolvable.
std::vector<int> sort_companion_lengths(int n);

// True iff no two neighbours in `perm` were neighbours anywhere in `original` (by value).
bool adjacency_free(const std::vector<std::string>& original, const std::vector<std::string>& perm);
// Count of neighbouring pairs in `perm` that were neighbours in `original`.
int adjacent_pair_count(const std::vector<std::string>& original, const std::vector<std::string>& perm);

// ---- structural understanding ----------------------------------------------

std::vector<TaskInstance> gen_compc(const GenSpec& spec, const Corpus& corpus, const ComponentTable& table);
// Split instances followed by their paired combine instances.
std::vector<TaskInstance> gen_compm(const GenSpec& spec, const Corpus& corpus, const ComponentTable& table);
// One instance per inventory character; variant rotates with character and language.
std::vector<TaskInstance> gen_dot(const GenSpec& spec, const FontStore& store,
                                  const std::vector<InventoryEntry>& inventory);
// distribution: syllable count -> instances.
std::vector<TaskInstance> gen_ridl_ko(const GenSpec& spec, const std::vector<RiddleEntry>& entries,
                                      const std::map<int, int>& distribution);
std::vector<TaskInstance> gen_ridl_external(const GenSpec& spec, const std::vector<ExternalRiddle>& riddles);
// `sources` supplies English words or Chinese sentences; unused for Korean digit strings.
std::vector<TaskInstance> gen_var(const GenSpec& spec, const VariantMap& maps, const std::vector<std::string>& sources);

// Initial consonants of every syllable in a Hangul word.
std::string hangul_initials(std::string_view word);

}  // namespace tokbench

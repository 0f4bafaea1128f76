#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tokbench {

enum class Language { en, zh, ko };

inline constexpr std::array<Language, 3> kLanguages = {Language::en, Language::zh, Language::ko};

std::string_view to_string(Language lang);
Language parse_language(std::string_view s);

// Counting unit: a word for English, one character for Chinese and Korean.
using Unit = std::string;

std::vector<Unit> tokenize_units(Language lang, std::string_view text);

// ---- character classes -----------------------------------------------------

bool is_han(char32_t cp);
bool is_hangul_syllable(char32_t cp);
bool is_hangul_jamo(char32_t cp);
bool is_space(char32_t cp);
bool is_punct(char32_t cp);
char32_t to_lower(char32_t cp);

// Lowercase, drop punctuation and whitespace.
std::string normalize_answer(std::string_view text);
// Normalized runs between whitespace or punctuation; "irri, tati" gives {"irri", "tati"}.
std::vector<std::string> normalized_segments(std::string_view text);

// ---- Hangul ----------------------------------------------------------------

// Members are Hangul Compatibility Jamo (U+3131..U+318E); final 0 = no final.
struct JamoTriple {
  char32_t initial = 0;
  char32_t medial = 0;
  char32_t final = 0;

  bool operator==(const JamoTriple&) const = default;
};

JamoTriple decompose_hangul(char32_t syllable);
// Accepts compatibility jamo or the matching conjoining jamo.
char32_t compose_hangul(const JamoTriple& triple);

// Components in order initial, medial[, final] as UTF-8 strings.
std::vector<std::string> jamo_parts(char32_t syllable);

const std::array<char32_t, 19>& hangul_initials();
const std::array<char32_t, 21>& hangul_medials();
const std::array<char32_t, 28>& hangul_finals();  // [0] = 0

// ---- Chinese components ----------------------------------------------------

struct Decomposition {
  std::vector<std::string> parts;
  bool recombinable = false;
};

class ComponentTable {
 public:
  static ComponentTable load(const std::filesystem::path& path);

  void add(const std::string& ch, Decomposition d);

  // nullptr when the character has no entry. The first decomposition is primary.
  const std::vector<Decomposition>* find(std::string_view ch) const;
  bool contains(std::string_view ch) const { return find(ch) != nullptr; }
  // Characters in file order.
  const std::vector<std::string>& characters() const { return order_; }
  std::size_t size() const { return order_.size(); }

 private:
  std::unordered_map<std::string, std::vector<Decomposition>> entries_;
  std::vector<std::string> order_;
};

using Decompositions = std::vector<std::vector<std::string>>;

// zh: table lookup; ko: jamo triple; en: every contiguous split into 2-4 parts
// of at least two characters each.
Decompositions decompose_component(Language lang, std::string_view token, const ComponentTable& table);

// Occurrences of `target` summed over the units (see the design notes in README).
int count_component(Language lang, std::string_view target, const std::vector<Unit>& units,
                    const ComponentTable& table);

// ---- corpora and substitution tables ----------------------------------------

struct Corpus {
  Language language = Language::en;
  std::vector<std::string> items;
  std::string source;

  static Corpus load(Language lang, const std::filesystem::path& path);
};

// Plain line list: one item per line, '#' comments and blank lines skipped.
std::vector<std::string> read_item_lines(const std::filesystem::path& path);

class HomoglyphTable {
 public:
  static HomoglyphTable load(const std::filesystem::path& path);

  // Throws ResourceError when a variant equals its source or maps back to two sources.
  void add(const std::string& source, const std::vector<std::string>& variants);

  const std::vector<std::string>* variants(std::string_view source) const;
  std::optional<std::string> restore(std::string_view variant) const;
  // Restores every known variant code point; others pass through.
  std::string restore_text(std::string_view text) const;
  std::size_t size() const { return forward_.size(); }
  const std::map<std::string, std::vector<std::string>>& entries() const { return forward_; }

 private:
  std::map<std::string, std::vector<std::string>> forward_;
  std::unordered_map<std::string, std::string> backward_;
};

}  // namespace tokbench

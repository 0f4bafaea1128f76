#include "tokbench/text.h"

#include <fstream>

#include "tokbench/errors.h"
#include "tokbench/utf8.h"

namespace tokbench {

std::string_view to_string(Language lang) {
  switch (lang) {
    case Language::en: return "en";
    case Language::zh: return "zh";
    case Language::ko: return "ko";
  }
  return "?";
}

Language parse_language(std::string_view s) {
  if (s == "en") return Language::en;
  if (s == "zh") return Language::zh;
  if (s == "ko") return Language::ko;
  throw DomainError("unknown language \"" + std::string(s) + "\"");
}

bool is_han(char32_t cp) {
  return (cp >= 0x4E00 && cp <= 0x9FFF) || (cp >= 0x3400 && cp <= 0x4DBF) ||
         (cp >= 0xF900 && cp <= 0xFAFF) || (cp >= 0x20000 && cp <= 0x3FFFF) ||
         (cp >= 0x2E80 && cp <= 0x2FDF);
}

bool is_hangul_syllable(char32_t cp) { return cp >= 0xAC00 && cp <= 0xD7A3; }

bool is_hangul_jamo(char32_t cp) {
  return (cp >= 0x1100 && cp <= 0x11FF) || (cp >= 0x3131 && cp <= 0x318E);
}

bool is_space(char32_t cp) {
  return cp == ' ' || (cp >= 0x09 && cp <= 0x0D) || cp == 0x85 || cp == 0xA0 || cp == 0x1680 ||
         (cp >= 0x2000 && cp <= 0x200B) || cp == 0x2028 || cp == 0x2029 || cp == 0x202F ||
         cp == 0x205F || cp == 0x3000 || cp == 0xFEFF;
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) || (cp >= 0x5B && cp <= 0x60) ||
           (cp >= 0x7B && cp <= 0x7E);
  }
  if (cp >= 0xA1 && cp <= 0xBF) {
    return cp != 0xAA && cp != 0xB2 && cp != 0xB3 && cp != 0xB5 && cp != 0xB9 && cp != 0xBA &&
           !(cp >= 0xBC && cp <= 0xBE);
  }
  if (cp == 0xD7 || cp == 0xF7) return true;
  if (cp >= 0x2010 && cp <= 0x205E) return true;
  if (cp >= 0x3001 && cp <= 0x303F) return cp != 0x3005 && cp != 0x3006 && cp != 0x3007;
  if (cp == 0x30FB) return true;
  if (cp >= 0xFE10 && cp <= 0xFE6F) return true;
  if ((cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
      (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65) ||
      (cp >= 0xFFE0 && cp <= 0xFFEE)) {
    return true;
  }
  return false;
}

char32_t to_lower(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0xFF21 && cp <= 0xFF3A) return cp + 0x20;
  return cp;
}

std::string normalize_answer(std::string_view text) {
  std::u32string out;
  for (char32_t cp : utf8::decode(text)) {
    if (is_space(cp) || is_punct(cp)) continue;
    out.push_back(to_lower(cp));
  }
  return utf8::encode(out);
}

std::vector<std::string> normalized_segments(std::string_view text) {
  std::vector<std::string> out;
  std::u32string cur;
  for (char32_t cp : utf8::decode(text)) {
    if (is_space(cp) || is_punct(cp)) {
      if (!cur.empty()) out.push_back(utf8::encode(cur));
      cur.clear();
    } else {
      cur.push_back(to_lower(cp));
    }
  }
  if (!cur.empty()) out.push_back(utf8::encode(cur));
  return out;
}

namespace {

bool in_script(Language lang, char32_t cp) {
  if (lang == Language::zh) return is_han(cp);
  return is_hangul_syllable(cp) || is_hangul_jamo(cp);
}

}  // namespace

std::vector<Unit> tokenize_units(Language lang, std::string_view text) {
  const std::u32string cps = utf8::decode(text);
  std::vector<Unit> units;
  if (lang != Language::en) {
    for (char32_t cp : cps) {
      if (in_script(lang, cp)) units.push_back(utf8::encode(cp));
    }
    return units;
  }
  std::size_t i = 0;
  while (i < cps.size()) {
    while (i < cps.size() && is_space(cps[i])) ++i;
    std::size_t j = i;
    while (j < cps.size() && !is_space(cps[j])) ++j;
    std::size_t a = i, b = j;
    while (a < b && is_punct(cps[a])) ++a;
    while (b > a && is_punct(cps[b - 1])) --b;
    if (a < b) units.push_back(utf8::encode(std::u32string_view(cps).substr(a, b - a)));
    i = j;
  }
  return units;
}

// ---- Hangul ----------------------------------------------------------------

namespace {

constexpr char32_t kSBase = 0xAC00;
constexpr int kMedialCount = 21;
constexpr int kFinalCount = 28;

constexpr std::array<char32_t, 19> kInitials = {0x3131, 0x3132, 0x3134, 0x3137, 0x3138, 0x3139, 0x3141,
                                                0x3142, 0x3143, 0x3145, 0x3146, 0x3147, 0x3148, 0x3149,
                                                0x314A, 0x314B, 0x314C, 0x314D, 0x314E};

constexpr std::array<char32_t, 21> kMedials = {0x314F, 0x3150, 0x3151, 0x3152, 0x3153, 0x3154, 0x3155,
                                               0x3156, 0x3157, 0x3158, 0x3159, 0x315A, 0x315B, 0x315C,
                                               0x315D, 0x315E, 0x315F, 0x3160, 0x3161, 0x3162, 0x3163};

constexpr std::array<char32_t, 28> kFinals = {0,      0x3131, 0x3132, 0x3133, 0x3134, 0x3135, 0x3136,
                                              0x3137, 0x3139, 0x313A, 0x313B, 0x313C, 0x313D, 0x313E,
                                              0x313F, 0x3140, 0x3141, 0x3142, 0x3144, 0x3145, 0x3146,
                                              0x3147, 0x3148, 0x314A, 0x314B, 0x314C, 0x314D, 0x314E};

template <std::size_t N>
int index_of(const std::array<char32_t, N>& table, char32_t cp, int first = 0) {
  for (std::size_t i = first; i < N; ++i) {
    if (table[i] == cp) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace

const std::array<char32_t, 19>& hangul_initials() { return kInitials; }
const std::array<char32_t, 21>& hangul_medials() { return kMedials; }
const std::array<char32_t, 28>& hangul_finals() { return kFinals; }

JamoTriple decompose_hangul(char32_t syllable) {
  if (!is_hangul_syllable(syllable)) {
    throw DomainError("not a precomposed Hangul syllable: " + utf8::hex(syllable));
  }
  const char32_t offset = syllable - kSBase;
  return {kInitials[offset / (kMedialCount * kFinalCount)],
          kMedials[(offset % (kMedialCount * kFinalCount)) / kFinalCount], kFinals[offset % kFinalCount]};
}

char32_t compose_hangul(const JamoTriple& t) {
  int l = -1, v = -1, f = 0;
  if (t.initial >= 0x1100 && t.initial <= 0x1112) {
    l = static_cast<int>(t.initial - 0x1100);
  } else {
    l = index_of(kInitials, t.initial);
  }
  if (t.medial >= 0x1161 && t.medial <= 0x1175) {
    v = static_cast<int>(t.medial - 0x1161);
  } else {
    v = index_of(kMedials, t.medial);
  }
  if (t.final != 0) {
    if (t.final >= 0x11A8 && t.final <= 0x11C2) {
      f = static_cast<int>(t.final - 0x11A8) + 1;
    } else {
      f = index_of(kFinals, t.final, 1);
    }
  }
  if (l < 0) throw DomainError("invalid initial jamo " + utf8::hex(t.initial));
  if (v < 0) throw DomainError("invalid medial jamo " + utf8::hex(t.medial));
  if (f < 0) throw DomainError("invalid final jamo " + utf8::hex(t.final));
  return kSBase + static_cast<char32_t>((l * kMedialCount + v) * kFinalCount + f);
}

std::vector<std::string> jamo_parts(char32_t syllable) {
  const JamoTriple t = decompose_hangul(syllable);
  std::vector<std::string> parts{utf8::encode(t.initial), utf8::encode(t.medial)};
  if (t.final != 0) parts.push_back(utf8::encode(t.final));
  return parts;
}

// ---- components ------------------------------------------------------------

namespace {

std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  return in;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

void ComponentTable::add(const std::string& ch, Decomposition d) {
  if (d.parts.size() < 2) throw ResourceError("decomposition of " + ch + " has fewer than two parts");
  auto& list = entries_[ch];
  if (list.empty()) order_.push_back(ch);
  if (list.size() >= 4) throw ResourceError("more than four decompositions for " + ch);
  list.push_back(std::move(d));
}

const std::vector<Decomposition>* ComponentTable::find(std::string_view ch) const {
  auto it = entries_.find(std::string(ch));
  return it == entries_.end() ? nullptr : &it->second;
}

ComponentTable ComponentTable::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  ComponentTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_on(line, '\t');
    if (cols.size() != 3 || (cols[2] != "0" && cols[2] != "1")) {
      throw ResourceError(path.string() + ":" + std::to_string(lineno) + ": expected char<TAB>parts<TAB>0|1");
    }
    utf8::single(cols[0]);
    Decomposition d{split_on(cols[1], ','), cols[2] == "1"};
    for (const auto& p : d.parts) {
      if (p.empty()) throw ResourceError(path.string() + ":" + std::to_string(lineno) + ": empty component");
    }
    table.add(cols[0], std::move(d));
  }
  return table;
}

Decompositions decompose_component(Language lang, std::string_view token, const ComponentTable& table) {
  Decompositions out;
  if (lang == Language::zh) {
    const auto* list = table.find(token);
    if (list == nullptr) throw NotFoundError("no decomposition for \"" + std::string(token) + "\"");
    for (const auto& d : *list) out.push_back(d.parts);
    return out;
  }
  if (lang == Language::ko) {
    out.push_back(jamo_parts(utf8::single(token)));
    return out;
  }
  const std::u32string w = utf8::decode(token);
  const int n = static_cast<int>(w.size());
  if (n <= 5) throw DomainError("token \"" + std::string(token) + "\" is too short to split");
  // Cut positions c1 < c2 < ... with every part at least two characters long.
  std::vector<int> cuts;
  auto emit = [&] {
    std::vector<std::string> parts;
    int prev = 0;
    for (int c : cuts) {
      parts.push_back(utf8::encode(std::u32string_view(w).substr(prev, c - prev)));
      prev = c;
    }
    parts.push_back(utf8::encode(std::u32string_view(w).substr(prev)));
    out.push_back(std::move(parts));
  };
  auto recurse = [&](auto&& self, int start, int remaining_cuts) -> void {
    if (remaining_cuts == 0) {
      if (n - start >= 2) emit();
      return;
    }
    for (int c = start + 2; c <= n - 2 * remaining_cuts; ++c) {
      cuts.push_back(c);
      self(self, c, remaining_cuts - 1);
      cuts.pop_back();
    }
  };
  for (int k = 1; k <= 3; ++k) recurse(recurse, 0, k);
  return out;
}

int count_component(Language lang, std::string_view target, const std::vector<Unit>& units,
                    const ComponentTable& table) {
  int total = 0;
  if (lang == Language::en) {
    const char32_t t = to_lower(utf8::single(target));
    for (const auto& u : units) {
      for (char32_t cp : utf8::decode(u)) total += to_lower(cp) == t ? 1 : 0;
    }
    return total;
  }
  if (lang == Language::ko) {
    const char32_t t = utf8::single(target);
    for (const auto& u : units) {
      const JamoTriple j = decompose_hangul(utf8::single(u));
      total += (j.initial == t) + (j.medial == t) + (j.final == t);
    }
    return total;
  }
  std::string missing;
  for (const auto& u : units) {
    const auto* list = table.find(u);
    if (list == nullptr) {
      missing += missing.empty() ? u : " " + u;
      continue;
    }
    for (const auto& p : list->front().parts) total += p == target ? 1 : 0;
  }
  if (!missing.empty()) throw NotFoundError("characters missing from component table: " + missing);
  return total;
}

// ---- corpora ---------------------------------------------------------------

std::vector<std::string> read_item_lines(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::vector<std::string> items;
  std::string line;
  while (std::getline(in, line)) {
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    items.push_back(line);
  }
  return items;
}

Corpus Corpus::load(Language lang, const std::filesystem::path& path) {
  Corpus c{lang, read_item_lines(path), path.filename().string()};
  for (const auto& item : c.items) {
    const auto cps = utf8::decode(item);
    if (lang == Language::en) {
      for (char32_t cp : cps) {
        if (!((cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z'))) {
          throw ResourceError(path.string() + ": non-alphabetic English item \"" + item + "\"");
        }
      }
    } else if (cps.size() != 1 || !in_script(lang, cps[0])) {
      throw ResourceError(path.string() + ": item \"" + item + "\" is not a single " +
                          std::string(to_string(lang)) + " character");
    }
  }
  if (c.items.empty()) throw ResourceError(path.string() + ": empty corpus");
  return c;
}

// ---- homoglyphs ------------------------------------------------------------

void HomoglyphTable::add(const std::string& source, const std::vector<std::string>& variants) {
  auto& list = forward_[source];
  for (const auto& v : variants) {
    if (v == source) throw ResourceError("variant equals its source: " + source);
    auto [it, inserted] = backward_.emplace(v, source);
    if (!inserted && it->second != source) {
      throw ResourceError("variant " + v + " restores to both " + it->second + " and " + source);
    }
    list.push_back(v);
  }
}

const std::vector<std::string>* HomoglyphTable::variants(std::string_view source) const {
  auto it = forward_.find(std::string(source));
  return it == forward_.end() ? nullptr : &it->second;
}

std::optional<std::string> HomoglyphTable::restore(std::string_view variant) const {
  auto it = backward_.find(std::string(variant));
  if (it == backward_.end()) return std::nullopt;
  return it->second;
}

std::string HomoglyphTable::restore_text(std::string_view text) const {
  std::string out;
  for (const auto& ch : utf8::split(text)) {
    auto r = restore(ch);
    out += r ? *r : ch;
  }
  return out;
}

HomoglyphTable HomoglyphTable::load(const std::filesystem::path& path) {
  auto in = open_input(path);
  HomoglyphTable table;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split_on(line, '\t');
    if (cols.size() != 2) {
      throw ResourceError(path.string() + ":" + std::to_string(lineno) + ": expected source<TAB>variants");
    }
    utf8::single(cols[0]);
    auto variants = split_on(cols[1], ',');
    for (const auto& v : variants) utf8::single(v);
    table.add(cols[0], variants);
  }
  return table;
}

}  // namespace tokbench

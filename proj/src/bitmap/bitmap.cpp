#include "tokbench/bitmap.h"

#include <algorithm>
#include <bit>
#include <fstream>
#include <iterator>
#include <mutex>
#include <set>

#include "tokbench/errors.h"
#include "tokbench/gb2312_table.h"
#include "tokbench/text.h"
#include "tokbench/utf8.h"

namespace tokbench {

void Bitmap16::set(int row, int col, bool on) {
  const auto mask = static_cast<std::uint16_t>(1u << (15 - col));
  rows_[row] = on ? (rows_[row] | mask) : (rows_[row] & ~mask);
}

int Bitmap16::popcount() const {
  int n = 0;
  for (auto r : rows_) n += std::popcount(r);
  return n;
}

std::string Bitmap16::serialize() const {
  std::string out;
  out.reserve(16 * 17);
  for (int r = 0; r < 16; ++r) {
    if (r > 0) out.push_back('\n');
    for (int c = 0; c < 16; ++c) out.push_back(get(r, c) ? '1' : '0');
  }
  return out;
}

Bitmap16 Bitmap16::parse(std::string_view text) {
  Bitmap16 b;
  int row = 0, col = 0;
  for (char ch : text) {
    if (ch == '\r') continue;
    if (ch == '\n') {
      if (col != 16) throw DomainError("bitmap row " + std::to_string(row) + " is not 16 cells wide");
      ++row;
      col = 0;
      continue;
    }
    if ((ch != '0' && ch != '1') || row >= 16 || col >= 16) {
      throw DomainError("malformed bitmap text");
    }
    b.set(row, col++, ch == '1');
  }
  if (row != 15 || col != 16) throw DomainError("bitmap text must have 16 rows of 16 cells");
  return b;
}

std::string_view to_string(ScriptCategory c) {
  switch (c) {
    case ScriptCategory::digit: return "digit";
    case ScriptCategory::latin: return "latin";
    case ScriptCategory::greek: return "greek";
    case ScriptCategory::hanzi: return "hanzi";
    case ScriptCategory::hangul: return "hangul";
    case ScriptCategory::kana: return "kana";
    case ScriptCategory::symbol: return "symbol";
  }
  return "?";
}

ScriptCategory parse_script_category(std::string_view s) {
  for (auto c : kScriptCategories) {
    if (to_string(c) == s) return c;
  }
  throw DomainError("unknown script category \"" + std::string(s) + "\"");
}

ScriptCategory classify_script(char32_t cp) {
  if (cp >= '0' && cp <= '9') return ScriptCategory::digit;
  if ((cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z')) return ScriptCategory::latin;
  if ((cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) || (cp >= 0x3B1 && cp <= 0x3C9)) return ScriptCategory::greek;
  if (cp >= 0x4E00 && cp <= 0x9FFF) return ScriptCategory::hanzi;
  if (is_hangul_syllable(cp)) return ScriptCategory::hangul;
  if ((cp >= 0x3041 && cp <= 0x3096) || (cp >= 0x30A1 && cp <= 0x30FA)) return ScriptCategory::kana;
  if (is_punct(cp)) return ScriptCategory::symbol;
  throw DomainError("character " + utf8::hex(cp) + " is outside the dot-matrix inventory scripts");
}

std::optional<std::pair<int, int>> gb2312_position(char32_t cp) {
  const auto* begin = detail::kGb2312Table;
  const auto* end = begin + detail::kGb2312TableSize;
  const auto* it = std::lower_bound(begin, end, cp,
                                    [](const detail::Gb2312Entry& e, char32_t v) { return e.code_point < v; });
  if (it == end || it->code_point != cp) return std::nullopt;
  return std::make_pair((it->gb >> 8) - 0xA0, (it->gb & 0xFF) - 0xA0);
}

Bitmap16 decode_hzk16(const std::uint8_t* g) {
  Bitmap16::Rows rows{};
  for (int r = 0; r < 16; ++r) rows[r] = static_cast<std::uint16_t>((g[2 * r] << 8) | g[2 * r + 1]);
  return Bitmap16(rows);
}

Bitmap16 decode_asc16(const std::uint8_t* g) {
  Bitmap16::Rows rows{};
  for (int r = 0; r < 16; ++r) rows[r] = static_cast<std::uint16_t>(g[r] << 8);
  return Bitmap16(rows);
}

std::array<std::uint8_t, 32> encode_hzk16(const Bitmap16& b) {
  std::array<std::uint8_t, 32> out{};
  for (int r = 0; r < 16; ++r) {
    out[2 * r] = static_cast<std::uint8_t>(b.rows()[r] >> 8);
    out[2 * r + 1] = static_cast<std::uint8_t>(b.rows()[r] & 0xFF);
  }
  return out;
}

std::array<std::uint8_t, 16> encode_asc16(const Bitmap16& b) {
  std::array<std::uint8_t, 16> out{};
  for (int r = 0; r < 16; ++r) {
    if (b.rows()[r] & 0xFF) throw DomainError("glyph wider than 8 columns cannot be stored as ASC16");
    out[r] = static_cast<std::uint8_t>(b.rows()[r] >> 8);
  }
  return out;
}

// ---- hex font --------------------------------------------------------------

std::unique_ptr<HexFontRenderer> HexFontRenderer::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ResourceError("cannot open " + path.string());
  auto font = std::make_unique<HexFontRenderer>();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto colon = line.find(':');
    const std::string digits = colon == std::string::npos ? "" : line.substr(colon + 1);
    if (colon == std::string::npos || (digits.size() != 32 && digits.size() != 64)) {
      throw ResourceError(path.string() + ":" + std::to_string(lineno) + ": expected XXXX:<32 or 64 hex digits>");
    }
    try {
      const auto cp = static_cast<char32_t>(std::stoul(line.substr(0, colon), nullptr, 16));
      const std::size_t per_row = digits.size() / 16;
      Bitmap16::Rows rows{};
      for (int r = 0; r < 16; ++r) {
        auto v = static_cast<std::uint16_t>(std::stoul(digits.substr(r * per_row, per_row), nullptr, 16));
        rows[r] = per_row == 2 ? static_cast<std::uint16_t>(v << 8) : v;
      }
      font->glyphs_[cp] = Bitmap16(rows);
    } catch (const std::logic_error&) {
      throw ResourceError(path.string() + ":" + std::to_string(lineno) + ": bad hex digits");
    }
  }
  return font;
}

std::optional<Bitmap16> HexFontRenderer::render(char32_t cp) const {
  auto it = glyphs_.find(cp);
  if (it == glyphs_.end()) return std::nullopt;
  return it->second;
}

// ---- font store ------------------------------------------------------------

namespace {

std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

FontStore::FontStore(std::vector<std::uint8_t> hzk16, std::vector<std::uint8_t> asc16,
                     std::shared_ptr<const GlyphRenderer> fallback)
    : hzk16_(std::move(hzk16)), asc16_(std::move(asc16)), fallback_(std::move(fallback)) {
  if (hzk16_.size() % 32 != 0) throw ResourceError("HZK16 data length is not a multiple of 32");
  if (asc16_.size() % 16 != 0) throw ResourceError("ASC16 data length is not a multiple of 16");
}

FontStore FontStore::load(const std::filesystem::path& hzk16, const std::filesystem::path& asc16,
                          std::shared_ptr<const GlyphRenderer> fallback) {
  return FontStore(read_bytes(hzk16), read_bytes(asc16), std::move(fallback));
}

std::optional<Bitmap16> FontStore::hzk16_lookup(char32_t cp) const {
  if (cp < 0x80) return std::nullopt;
  const auto pos = gb2312_position(cp);
  if (!pos) return std::nullopt;
  const std::size_t offset = (94 * (pos->first - 1) + (pos->second - 1)) * 32;
  if (offset + 32 > hzk16_.size()) return std::nullopt;
  return decode_hzk16(hzk16_.data() + offset);
}

std::optional<Bitmap16> FontStore::asc16_lookup(char32_t cp) const {
  if (cp > 0x7F) return std::nullopt;
  const std::size_t offset = static_cast<std::size_t>(cp) * 16;
  if (offset + 16 > asc16_.size()) return std::nullopt;
  return decode_asc16(asc16_.data() + offset);
}

std::optional<Bitmap16> FontStore::render_uncached(char32_t cp) const {
  ++decodes_;
  auto primary = cp <= 0x7F ? asc16_lookup(cp) : hzk16_lookup(cp);
  if (primary && !primary->blank()) return primary;
  if (fallback_) {
    auto alt = fallback_->render(cp);
    if (alt && !alt->blank()) return alt;
  }
  return std::nullopt;
}

Bitmap16 FontStore::render(char32_t cp) const {
  std::optional<Bitmap16> result;
  bool cached = false;
  {
    std::shared_lock lock(cache_mutex_);
    auto it = cache_.find(cp);
    if (it != cache_.end()) {
      result = it->second;
      cached = true;
    }
  }
  if (!cached) {
    result = render_uncached(cp);
    std::unique_lock lock(cache_mutex_);
    cache_.emplace(cp, result);
  }
  if (!result) throw RenderError("no non-blank glyph for " + utf8::hex(cp));
  return *result;
}

// ---- inventory -------------------------------------------------------------

std::vector<InventoryEntry> load_inventory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  std::vector<InventoryEntry> entries;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (tab == std::string::npos) throw ResourceError(where + ": expected category<TAB>characters");
    ScriptCategory cat;
    try {
      cat = parse_script_category(line.substr(0, tab));
    } catch (const DomainError& e) {
      throw ResourceError(where + ": " + e.what());
    }
    for (char32_t cp : utf8::decode(std::string_view(line).substr(tab + 1))) {
      const std::string ch = utf8::encode(cp);
      ScriptCategory actual;
      try {
        actual = classify_script(cp);
      } catch (const DomainError& e) {
        throw ResourceError(where + ": " + e.what());
      }
      if (actual != cat) {
        throw ResourceError(where + ": " + ch + " is listed as " + std::string(to_string(cat)) + " but classifies as " +
                            std::string(to_string(actual)));
      }
      if (!seen.insert(ch).second) throw ResourceError(where + ": duplicate character " + ch);
      entries.push_back({cat, ch});
    }
  }
  return entries;
}

}  // namespace tokbench

#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tokbench {

// 16x16 binary glyph; bit 15 of each row is column 0.
class Bitmap16 {
 public:
  using Rows = std::array<std::uint16_t, 16>;

  Bitmap16() = default;
  explicit Bitmap16(const Rows& rows) : rows_(rows) {}

  bool get(int row, int col) const { return (rows_[row] >> (15 - col)) & 1u; }
  void set(int row, int col, bool on);
  const Rows& rows() const { return rows_; }
  int popcount() const;
  bool blank() const { return popcount() == 0; }

  // Sixteen lines of '0'/'1' joined by '\n', no trailing newline.
  std::string serialize() const;
  static Bitmap16 parse(std::string_view text);

  bool operator==(const Bitmap16&) const = default;

 private:
  Rows rows_{};
};

inline constexpr std::string_view kBitmapEncoding = "rows01-v1";

enum class ScriptCategory { digit, latin, greek, hanzi, hangul, kana, symbol };

// Pinned prompt order.
inline constexpr std::array<ScriptCategory, 7> kScriptCategories = {
    ScriptCategory::digit, ScriptCategory::latin, ScriptCategory::greek, ScriptCategory::hanzi,
    ScriptCategory::hangul, ScriptCategory::kana, ScriptCategory::symbol};

std::string_view to_string(ScriptCategory c);
ScriptCategory parse_script_category(std::string_view s);

ScriptCategory classify_script(char32_t cp);

// GB2312 zone/position bytes (each minus 0xA0), or nullopt.
std::optional<std::pair<int, int>> gb2312_position(char32_t cp);

// Raw glyph codecs. decode_* reads one glyph at `offset`; encode_* is the inverse.
Bitmap16 decode_hzk16(const std::uint8_t* glyph32);
Bitmap16 decode_asc16(const std::uint8_t* glyph16);
std::array<std::uint8_t, 32> encode_hzk16(const Bitmap16& b);
std::array<std::uint8_t, 16> encode_asc16(const Bitmap16& b);

// Fallback source consulted when the fixed-cell fonts miss.
class GlyphRenderer {
 public:
  virtual ~GlyphRenderer() = default;
  virtual std::optional<Bitmap16> render(char32_t cp) const = 0;
};

// GNU Unifont-style .hex: "XXXX:" followed by 32 (8-wide) or 64 (16-wide) hex digits.
class HexFontRenderer : public GlyphRenderer {
 public:
  static std::unique_ptr<HexFontRenderer> load(const std::filesystem::path& path);
  std::optional<Bitmap16> render(char32_t cp) const override;
  std::size_t size() const { return glyphs_.size(); }

 private:
  std::unordered_map<char32_t, Bitmap16> glyphs_;
};

class FontStore {
 public:
  FontStore(std::vector<std::uint8_t> hzk16, std::vector<std::uint8_t> asc16,
            std::shared_ptr<const GlyphRenderer> fallback = nullptr);

  static FontStore load(const std::filesystem::path& hzk16, const std::filesystem::path& asc16,
                        std::shared_ptr<const GlyphRenderer> fallback = nullptr);

  // Lookup misses return nullopt; blank glyphs are returned as-is.
  std::optional<Bitmap16> hzk16_lookup(char32_t cp) const;
  std::optional<Bitmap16> asc16_lookup(char32_t cp) const;

  // Priority chain with caching; throws RenderError when every source misses or is blank.
  Bitmap16 render(char32_t cp) const;

  const std::vector<std::uint8_t>& hzk16_bytes() const { return hzk16_; }
  const std::vector<std::uint8_t>& asc16_bytes() const { return asc16_; }
  // Number of uncached renders performed.
  std::size_t decode_count() const { return decodes_.load(); }

 private:
  std::optional<Bitmap16> render_uncached(char32_t cp) const;

  std::vector<std::uint8_t> hzk16_;
  std::vector<std::uint8_t> asc16_;
  std::shared_ptr<const GlyphRenderer> fallback_;
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<char32_t, std::optional<Bitmap16>> cache_;
  mutable std::atomic<std::size_t> decodes_{0};
};

struct InventoryEntry {
  ScriptCategory category;
  std::string character;
};

// `category<TAB>characters` lines; throws ResourceError on duplicates or a
// category that disagrees with classify_script.
std::vector<InventoryEntry> load_inventory(const std::filesystem::path& path);

}  // namespace tokbench

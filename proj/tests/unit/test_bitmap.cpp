#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "test_paths.h"
#include "tokbench/bitmap.h"
#include "tokbench/errors.h"
#include "tokbench/utf8.h"

using namespace tokbench;
using tokbench::testing::fixture;
using tokbench::testing::resource;
using tokbench::testing::TempDir;

namespace {

std::vector<std::uint8_t> bytes_of(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

const FontStore& shipped_store() {
  static const FontStore store(bytes_of(resource("fonts/HZK16")), bytes_of(resource("fonts/ASC16")),
                               HexFontRenderer::load(resource("fonts/hangul16.hex")));
  return store;
}

}  // namespace

TEST(Bitmap, SerializeParseRoundTrip) {
  Bitmap16 b;
  b.set(0, 0, true);
  b.set(15, 15, true);
  b.set(7, 3, true);
  EXPECT_EQ(b.popcount(), 3);
  const auto text = b.serialize();
  EXPECT_EQ(text.size(), 16u * 16u + 15u);
  EXPECT_EQ(text.substr(0, 16), "1000000000000000");
  EXPECT_EQ(Bitmap16::parse(text), b);
  EXPECT_THROW(Bitmap16::parse("0101"), DomainError);
}

TEST(Gb2312, PositionsMatchStandardCodec) {
  std::ifstream in(fixture("gb2312_sample.tsv"));
  std::string ch;
  int zone = 0, pos = 0, rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    fields >> ch >> zone >> pos;
    const auto p = gb2312_position(utf8::single(ch));
    ASSERT_TRUE(p) << ch;
    EXPECT_EQ(p->first, zone) << ch;
    EXPECT_EQ(p->second, pos) << ch;
    ++rows;
  }
  EXPECT_GT(rows, 400);
  EXPECT_FALSE(gb2312_position(U'A'));
  EXPECT_FALSE(gb2312_position(U'가'));
}

TEST(Gb2312, HzkOffsetFormula) {
  // 啊 is zone 16 position 1: offset (94 * 15 + 0) * 32.
  const auto& store = shipped_store();
  const auto glyph = store.hzk16_lookup(U'啊');
  ASSERT_TRUE(glyph);
  const std::size_t offset = (94 * 15 + 0) * 32;
  EXPECT_EQ(*glyph, decode_hzk16(store.hzk16_bytes().data() + offset));
  EXPECT_FALSE(glyph->blank());
}

TEST(Codec, EveryShippedGlyphReencodesByteIdentically) {
  const auto& store = shipped_store();
  const auto& hzk = store.hzk16_bytes();
  ASSERT_EQ(hzk.size() % 32, 0u);
  for (std::size_t off = 0; off < hzk.size(); off += 32) {
    const auto enc = encode_hzk16(decode_hzk16(hzk.data() + off));
    ASSERT_TRUE(std::equal(enc.begin(), enc.end(), hzk.begin() + static_cast<long>(off))) << off;
  }
  const auto& asc = store.asc16_bytes();
  ASSERT_EQ(asc.size(), 4096u);
  for (std::size_t off = 0; off < asc.size(); off += 16) {
    const auto enc = encode_asc16(decode_asc16(asc.data() + off));
    ASSERT_TRUE(std::equal(enc.begin(), enc.end(), asc.begin() + static_cast<long>(off))) << off;
  }
}

TEST(Codec, AscRejectsWideGlyph) {
  Bitmap16 b;
  b.set(0, 12, true);
  EXPECT_THROW(encode_asc16(b), DomainError);
}

TEST(Render, ExclamationMarkHasBarAndDot) {
  const auto b = shipped_store().render(U'!');
  // Find lit rows: a contiguous bar, a gap, then a short dot.
  std::vector<int> lit;
  for (int r = 0; r < 16; ++r) {
    if (b.rows()[r] != 0) lit.push_back(r);
  }
  ASSERT_GE(lit.size(), 4u);
  int gaps = 0;
  for (std::size_t i = 1; i < lit.size(); ++i) gaps += lit[i] != lit[i - 1] + 1;
  EXPECT_EQ(gaps, 1);
  EXPECT_LT(lit.front(), 8);
  EXPECT_GE(lit.back(), 8);
}

TEST(Render, ChainUsesAscHzkAndFallback) {
  const auto& store = shipped_store();
  EXPECT_EQ(store.render(U'A'), *store.asc16_lookup(U'A'));
  EXPECT_EQ(store.render(U'中'), *store.hzk16_lookup(U'中'));
  EXPECT_FALSE(store.hzk16_lookup(U'쏠'));
  EXPECT_FALSE(store.render(U'쏠').blank());
  EXPECT_THROW(store.render(0xE000), RenderError);
}

TEST(Render, CachesDecodes) {
  const FontStore store(bytes_of(resource("fonts/HZK16")), bytes_of(resource("fonts/ASC16")));
  store.render(U'中');
  const auto after_first = store.decode_count();
  store.render(U'中');
  EXPECT_EQ(store.decode_count(), after_first);
}

TEST(Render, ConstructorRejectsTruncatedFont) {
  EXPECT_THROW(FontStore(std::vector<std::uint8_t>(31), std::vector<std::uint8_t>(4096)), std::exception);
}

TEST(HexFont, ParsesNarrowAndWideGlyphs) {
  TempDir dir("hex");
  {
    std::ofstream out(dir.path() / "f.hex");
    out << "0041:" << std::string(30, '0') << "FF\n";
    out << "AC00:" << std::string(60, '0') << "8001\n";
  }
  const auto r = HexFontRenderer::load(dir.path() / "f.hex");
  EXPECT_EQ(r->size(), 2u);
  const auto narrow = r->render(U'A');
  ASSERT_TRUE(narrow);
  EXPECT_EQ(narrow->rows()[15], 0xFF00);
  const auto wide = r->render(U'가');
  ASSERT_TRUE(wide);
  EXPECT_EQ(wide->rows()[15], 0x8001);
  EXPECT_FALSE(r->render(U'B'));
}

TEST(Script, ClassifiesInventoryScripts) {
  EXPECT_EQ(classify_script(U'7'), ScriptCategory::digit);
  EXPECT_EQ(classify_script(U'q'), ScriptCategory::latin);
  EXPECT_EQ(classify_script(U'ο'), ScriptCategory::greek);
  EXPECT_EQ(classify_script(U'究'), ScriptCategory::hanzi);
  EXPECT_EQ(classify_script(U'쏠'), ScriptCategory::hangul);
  EXPECT_EQ(classify_script(U'カ'), ScriptCategory::kana);
  EXPECT_EQ(classify_script(U'!'), ScriptCategory::symbol);
  EXPECT_THROW(classify_script(U'é'), DomainError);
}

TEST(Inventory, ShippedInventoryIsComplete) {
  const auto inv = load_inventory(resource("dot_inventory.tsv"));
  EXPECT_EQ(inv.size(), 976u);
  std::set<std::string> distinct;
  for (const auto& e : inv) {
    distinct.insert(e.character);
    EXPECT_EQ(classify_script(utf8::single(e.character)), e.category) << e.character;
    EXPECT_NO_THROW(shipped_store().render(utf8::single(e.character))) << e.character;
  }
  EXPECT_EQ(distinct.size(), inv.size());
}

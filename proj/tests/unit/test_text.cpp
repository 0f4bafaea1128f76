#include <fstream>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "test_paths.h"
#include "tokbench/errors.h"
#include "tokbench/text.h"
#include "tokbench/utf8.h"

using namespace tokbench;
using tokbench::testing::fixture;
using tokbench::testing::TempDir;

namespace {

std::vector<std::pair<std::string, std::vector<char32_t>>> read_codepoint_fixture(const std::string& name) {
  std::ifstream in(fixture(name));
  std::vector<std::pair<std::string, std::vector<char32_t>>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    std::istringstream hexes(line.substr(tab + 1));
    std::vector<char32_t> cps;
    std::string h;
    while (hexes >> h) cps.push_back(static_cast<char32_t>(std::stoul(h, nullptr, 16)));
    rows.emplace_back(line.substr(0, tab), cps);
  }
  return rows;
}

void write_file(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST(Utf8, RoundTripsCompilerEncodedLiterals) {
  const std::string s = "aé中\U0001F600가";
  const auto cps = utf8::decode(s);
  ASSERT_EQ(cps, (std::u32string{U'a', U'é', U'中', U'\U0001F600', U'가'}));
  EXPECT_EQ(utf8::encode(cps), s);
  EXPECT_EQ(utf8::split(s).size(), 5u);
}

TEST(Utf8, MalformedBytesBecomeReplacementCharacters) {
  const auto cps = utf8::decode(std::string("a\xff\xc3", 3));
  EXPECT_EQ(cps, (std::u32string{U'a', 0xFFFD, 0xFFFD}));
}

TEST(Utf8, SingleRejectsMultipleCodePoints) {
  EXPECT_EQ(utf8::single("究"), U'究');
  EXPECT_THROW(utf8::single("ab"), DomainError);
  EXPECT_THROW(utf8::single(""), DomainError);
  EXPECT_EQ(utf8::hex(0xAC00), "U+AC00");
}

TEST(Hangul, DecomposesLikeCanonicalDecomposition) {
  // Compatibility jamo map to conjoining jamo under compatibility decomposition.
  std::map<char32_t, char32_t> compat_to_conjoining;
  for (const auto& [ch, cps] : read_codepoint_fixture("compat_jamo.tsv")) {
    compat_to_conjoining[utf8::single(ch)] = cps.at(0);
  }
  const auto rows = read_codepoint_fixture("hangul_nfd.tsv");
  ASSERT_GT(rows.size(), 300u);
  for (const auto& [syl, nfd] : rows) {
    const char32_t s = utf8::single(syl);
    const JamoTriple t = decompose_hangul(s);
    EXPECT_EQ(compat_to_conjoining.at(t.initial), nfd[0]) << syl;
    EXPECT_EQ(compat_to_conjoining.at(t.medial), nfd[1]) << syl;
    EXPECT_EQ(t.final == 0, nfd.size() == 2) << syl;
    // Conjoining input composes back to the same syllable.
    JamoTriple conj{nfd[0], nfd[1], nfd.size() > 2 ? nfd[2] : 0};
    EXPECT_EQ(compose_hangul(conj), s) << syl;
    EXPECT_EQ(compose_hangul(t), s) << syl;
  }
}

TEST(Hangul, DecomposesDoubleInitialWithFinal) {
  const JamoTriple t = decompose_hangul(U'쏠');
  EXPECT_EQ(utf8::encode(t.initial), "ㅆ");
  EXPECT_EQ(utf8::encode(t.medial), "ㅗ");
  EXPECT_EQ(utf8::encode(t.final), "ㄹ");
  EXPECT_EQ(jamo_parts(U'쏠'), (std::vector<std::string>{"ㅆ", "ㅗ", "ㄹ"}));
}

TEST(Hangul, ExhaustiveRoundTripAndInvalidInput) {
  std::set<std::tuple<char32_t, char32_t, char32_t>> seen;
  for (char32_t s = 0xAC00; s <= 0xD7A3; ++s) {
    const auto t = decompose_hangul(s);
    ASSERT_EQ(compose_hangul(t), s);
    seen.insert({t.initial, t.medial, t.final});
  }
  EXPECT_EQ(seen.size(), 11172u);
  EXPECT_THROW(decompose_hangul(U'A'), DomainError);
  EXPECT_THROW(compose_hangul({U'ㅏ', U'ㅏ', 0}), DomainError);
}

TEST(Tokenize, EnglishWordsIgnorePunctuation) {
  EXPECT_EQ(tokenize_units(Language::en, "The ocean, waves roll.  gently!"),
            (std::vector<std::string>{"The", "ocean", "waves", "roll", "gently"}));
  EXPECT_TRUE(tokenize_units(Language::en, " ... ").empty());
}

TEST(Tokenize, ChineseAndKoreanCountCharacters) {
  EXPECT_EQ(tokenize_units(Language::zh, "今天天气很好。").size(), 6u);
  EXPECT_EQ(tokenize_units(Language::ko, "안녕 하세요!").size(), 5u);
  EXPECT_EQ(tokenize_units(Language::zh, "abc 中").size(), 1u);
}

TEST(Normalize, DropsSpacePunctuationAndCase) {
  EXPECT_EQ(normalize_answer("C A B"), "cab");
  EXPECT_EQ(normalize_answer("C > A > B."), "cab");
  EXPECT_EQ(normalize_answer("“穴”，九！"), "穴九");
  EXPECT_EQ(normalize_answer("ΑΒΓ"), "αβγ");
}

TEST(Components, EnglishSplitsEnumerateAllCuts) {
  ComponentTable none;
  const auto splits = decompose_component(Language::en, "abcdefg", none);
  // Brute force: all compositions of 7 into 2..4 parts, every part >= 2.
  int expected = 0;
  for (int mask = 0; mask < (1 << 6); ++mask) {
    std::vector<int> lens;
    int run = 1;
    for (int i = 0; i < 6; ++i) {
      if (mask & (1 << i)) {
        lens.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    lens.push_back(run);
    bool ok = lens.size() >= 2 && lens.size() <= 4;
    for (int l : lens) ok = ok && l >= 2;
    expected += ok;
  }
  EXPECT_EQ(static_cast<int>(splits.size()), expected);
  for (const auto& s : splits) {
    std::string joined;
    for (const auto& p : s) joined += p;
    EXPECT_EQ(joined, "abcdefg");
  }
  EXPECT_THROW(decompose_component(Language::en, "short", none), DomainError);
}

TEST(Components, TableLookupAndCounts) {
  ComponentTable table;
  table.add("究", {{"穴", "九"}, true});  // 究 = 穴 + 九
  table.add("林", {{"木", "木"}, true});  // 林 = 木 + 木
  EXPECT_EQ(decompose_component(Language::zh, "究", table),
            (Decompositions{{"穴", "九"}}));
  EXPECT_EQ(count_component(Language::zh, "木", {"林", "究", "林"}, table), 4);
  EXPECT_THROW(count_component(Language::zh, "木", {"森"}, table), NotFoundError);
  EXPECT_THROW(table.add("一", {{"一"}, false}), ResourceError);
}

TEST(Components, LetterAndJamoCounts) {
  ComponentTable none;
  EXPECT_EQ(count_component(Language::en, "p", {"rope-a-dope", "polyposis", "all-optical"}, none), 5);
  EXPECT_EQ(count_component(Language::en, "P", {"Pop"}, none), 2);
  // 쌀 has ㅆ only as initial; 갔 has ㅆ only as final; 랄 has ㄹ twice.
  EXPECT_EQ(count_component(Language::ko, "ㅆ", {"쌀", "갔"}, none), 2);
  EXPECT_EQ(count_component(Language::ko, "ㄹ", {"랄"}, none), 2);
}

TEST(Components, LoadsTabSeparatedTable) {
  TempDir dir("components");
  write_file(dir.path() / "t.tsv", "# c\n究\t穴,九\t1\n");
  const auto t = ComponentTable::load(dir.path() / "t.tsv");
  ASSERT_TRUE(t.contains("究"));
  EXPECT_TRUE(t.find("究")->front().recombinable);
  write_file(dir.path() / "bad.tsv", "究\t穴\n");
  EXPECT_THROW(ComponentTable::load(dir.path() / "bad.tsv"), ResourceError);
}

TEST(Homoglyphs, RestoresAndRejectsAmbiguity) {
  HomoglyphTable t;
  t.add("e", {"е", "ҽ"});
  t.add("o", {"о"});
  EXPECT_EQ(t.restore("е"), "e");
  EXPECT_EQ(t.restore_text("mееting"), "meeting");
  EXPECT_FALSE(t.restore("x"));
  EXPECT_THROW(t.add("a", {"е"}), ResourceError);
  EXPECT_THROW(t.add("a", {"a"}), ResourceError);
}

TEST(Corpus, ShippedCorporaMeetSizeAndScriptRules) {
  const auto en = Corpus::load(Language::en, tokbench::testing::resource("corpus/en_words.txt"));
  const auto zh = Corpus::load(Language::zh, tokbench::testing::resource("corpus/zh_chars.txt"));
  const auto ko = Corpus::load(Language::ko, tokbench::testing::resource("corpus/ko_syllables.txt"));
  EXPECT_EQ(en.items.size(), 60000u);
  EXPECT_EQ(zh.items.size(), 2500u);
  EXPECT_GE(ko.items.size(), 4000u);
  for (const auto& w : en.items) {
    for (char c : w) ASSERT_TRUE(std::isalpha(static_cast<unsigned char>(c))) << w;
  }
  for (const auto& c : zh.items) ASSERT_TRUE(is_han(utf8::single(c))) << c;
  for (const auto& c : ko.items) ASSERT_TRUE(is_hangul_syllable(utf8::single(c))) << c;
}

TEST(Corpus, RejectsWrongScript) {
  TempDir dir("corpus");
  write_file(dir.path() / "zh.txt", "中\nA\n");
  EXPECT_THROW(Corpus::load(Language::zh, dir.path() / "zh.txt"), std::exception);
  write_file(dir.path() / "en.txt", "hello\nwo-rld\n");
  EXPECT_THROW(Corpus::load(Language::en, dir.path() / "en.txt"), std::exception);
}

TEST(Language, ParsesNames) {
  EXPECT_EQ(parse_language("ko"), Language::ko);
  EXPECT_EQ(to_string(Language::zh), "zh");
  EXPECT_THROW(parse_language("fr"), DomainError);
}

#include "prompts.h"

#include <fmt/format.h>

namespace tokbench::prompts {

namespace {

std::string category_list() {
  std::string out;
  for (auto c : kScriptCategories) {
    if (!out.empty()) out += ", ";
    out += to_string(c);
  }
  return out;
}

std::string joined(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace

std::string freq(Language lang, std::string_view target, std::string_view text) {
  switch (lang) {
    case Language::zh: return fmt::format("在以下文本中，“{}”出现了多少次？文本：{}", target, text);
    case Language::ko: return fmt::format("다음 문장에서 \"{}\"는 몇 번 나타납니까? 문장: {}", target, text);
    default: return fmt::format("How many times does \"{}\" appear in the following text: {}?", target, text);
  }
}

std::string length_count(Language lang, std::string_view sentence) {
  switch (lang) {
    case Language::zh: return fmt::format("‘{}’中有多少个汉字？", sentence);
    case Language::ko: return fmt::format("‘{}’에는 한글 문자가 몇 개 있나요?", sentence);
    default: return fmt::format("How many words are in '{}'?", sentence);
  }
}

std::string length_generate(Language lang, int n, std::string_view topic) {
  switch (lang) {
    case Language::zh: return fmt::format("请给我随机生成{}个主题为{}的中文汉字。", n, topic);
    case Language::ko: return fmt::format("{} 주제로 {}개의 한글 글자를 생성해 주세요.", topic, n);
    default: return fmt::format("Please randomly generate {} English words with the topic of {}.", n, topic);
  }
}

std::string diff(Language lang, std::string_view seq1, std::string_view seq2) {
  switch (lang) {
    case Language::zh:
      return fmt::format("指出seq1和seq2中不同的那个字。seq1: {}, seq2: {} 如果两者完全相同（忽略顺序），请回答“yes”。", seq1,
                         seq2);
    case Language::ko:
      return fmt::format(
          "seq1과 seq2에서 다른 글자는 무엇입니까? seq1: {}, seq2: {} 순서를 무시하고 두 시퀀스가 같다면 \"yes\"라고 답하세요.",
          seq1, seq2);
    default:
      return fmt::format(
          "Which word is different between seq1: {} and seq2: {}? If they match exactly (ignoring order), answer "
          "\"yes\".",
          seq1, seq2);
  }
}

std::string sort(Language lang, std::string_view a, std::string_view b, std::string_view c) {
  switch (lang) {
    case Language::zh: return fmt::format("根据汉字数从长到短排序。 A: {}, B: {}, C: {}", a, b, c);
    case Language::ko: return fmt::format("한국어 글자 수 기준으로 길이순 정렬하세요. A: {}, B: {}, C: {}", a, b, c);
    default: return fmt::format("Sort by word count (longest to shortest). A: {}, B: {}, C: {}", a, b, c);
  }
}

std::string reorder(Language lang, std::string_view sentence) {
  switch (lang) {
    case Language::zh: return fmt::format("完全打乱“{}”，确保每个字与其原邻居不相邻。", sentence);
    case Language::ko:
      return fmt::format("\"{}\"을 섞어 주세요. 각 글자가 원래 이웃한 글자들과 더 이상 인접하지 않도록.", sentence);
    default:
      return fmt::format("Shuffle \"{}\" so that each word does not stay adjacent to its original neighbors.",
                         sentence);
  }
}

std::string component_count(Language lang, std::string_view target, std::string_view sequence) {
  switch (lang) {
    case Language::zh: return fmt::format("\"{}\"的字形中有多少\"{}\"存在？", sequence, target);
    case Language::ko: return fmt::format("\"{}\"에서 \"{}\"는 몇 회 출현하였습니까?", sequence, target);
    default: return fmt::format("How many times does the letter \"{}\" appear in \"{}\"?", target, sequence);
  }
}

std::string combine(Language lang, const std::vector<std::string>& parts) {
  switch (lang) {
    case Language::zh: return fmt::format("使用“{}”可以组成哪个汉字？", joined(parts, ""));
    case Language::ko: return fmt::format("다음 자모를 조합하세요: {}.", joined(parts, ", "));
    default: {
      std::vector<std::string> braced;
      for (const auto& p : parts) braced.push_back("{" + p + "}");
      return fmt::format("Combine {} into one word.", joined(braced, ", "));
    }
  }
}

std::string split(Language lang, std::string_view token, const std::vector<std::string>& hints) {
  switch (lang) {
    case Language::zh: return fmt::format("请将“{}”拆分为基本部件。", token);
    case Language::ko: return fmt::format("'{}'의 초성, 중성, 종성은 무엇인가요?", token);
    default: return fmt::format("Split \"{}\" into {}.", token, joined(hints, ", "));
  }
}

std::string riddle_ko(std::string_view theme, std::string_view initials) {
  return fmt::format("초성 퀴즈입니다! 주제: {}. 초성: {}", theme, initials);
}

std::string variant(Language lang, std::string_view distorted) {
  switch (lang) {
    case Language::zh: return fmt::format("请你还原出原始文本，不修改标点符号。文本：{}", distorted);
    case Language::ko: return fmt::format("Recover the original number from visually confused number: {}", distorted);
    default: return fmt::format("Recover the original word from visually confused characters: {}", distorted);
  }
}

std::string dot_char_to_category(Language lang, std::string_view ch) {
  switch (lang) {
    case Language::zh: return fmt::format("请将字符“{}”归入以下类别之一：{}。", ch, category_list());
    case Language::ko: return fmt::format("문자 \"{}\"를 다음 범주 중 하나로 분류하세요: {}.", ch, category_list());
    default:
      return fmt::format("Classify the script of the character \"{}\" into one of the following categories: {}.", ch,
                         category_list());
  }
}

std::string dot_bitmap_to_category(Language lang, const Bitmap16& bitmap) {
  switch (lang) {
    case Language::zh:
      return fmt::format("请将以下16x16点阵归入以下类别之一：{}（symbol 表示标点或其他符号）\nbitmap:\n{}", category_list(),
                         bitmap.serialize());
    case Language::ko:
      return fmt::format("다음 16x16 비트맵을 다음 범주 중 하나로 분류하세요: {} (symbol은 문장 부호 또는 기타 기호)\nbitmap:\n{}",
                         category_list(), bitmap.serialize());
    default:
      return fmt::format(
          "Please classify the following 16x16 bitmap into one of the following categories: {} (symbol means "
          "punctuation or other symbols)\nbitmap:\n{}",
          category_list(), bitmap.serialize());
  }
}

std::string dot_bitmap_to_char(Language lang, const Bitmap16& bitmap, ScriptCategory category) {
  switch (lang) {
    case Language::zh:
      return fmt::format("以下16x16点阵表示一个{}类别的字符。它是哪个字符？\nbitmap:\n{}", to_string(category),
                         bitmap.serialize());
    case Language::ko:
      return fmt::format("다음 16x16 비트맵은 {} 범주의 문자입니다. 어떤 문자입니까?\nbitmap:\n{}", to_string(category),
                         bitmap.serialize());
    default:
      return fmt::format("The following 16x16 bitmap shows a character from the {} category. Which character is it?\nbitmap:\n{}",
                         to_string(category), bitmap.serialize());
  }
}

}  // namespace tokbench::prompts

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tokbench/bitmap.h"
#include "tokbench/text.h"

namespace tokbench::prompts {

std::string freq(Language lang, std::string_view target, std::string_view text);
std::string length_count(Language lang, std::string_view sentence);
std::string length_generate(Language lang, int n, std::string_view topic);
std::string diff(Language lang, std::string_view seq1, std::string_view seq2);
std::string sort(Language lang, std::string_view a, std::string_view b, std::string_view c);
std::string reorder(Language lang, std::string_view sentence);
std::string component_count(Language lang, std::string_view target, std::string_view sequence);
std::string combine(Language lang, const std::vector<std::string>& parts);
// `hints` are the "from X to Y" spans for English; ignored elsewhere.
std::string split(Language lang, std::string_view token, const std::vector<std::string>& hints);
std::string riddle_ko(std::string_view theme, std::string_view initials);
std::string variant(Language lang, std::string_view distorted);
std::string dot_char_to_category(Language lang, std::string_view ch);
std::string dot_bitmap_to_category(Language lang, const Bitmap16& bitmap);
std::string dot_bitmap_to_char(Language lang, const Bitmap16& bitmap, ScriptCategory category);

}  // namespace tokbench::prompts

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tokbench/instance.h"

namespace tokbench {

struct ScoreOutcome {
  bool correct = false;
  std::string extracted;
  std::string detail;
};

// Content of the last <answer>...</answer> pair, else of the last **...** span, trimmed.
std::string extract_answer(std::string_view raw);

// Every signed decimal literal in order of appearance.
std::vector<double> numeric_literals(std::string_view text);

ScoreOutcome match_number(std::string_view label, std::string_view prediction);
ScoreOutcome sentence_length(std::string_view question, const TaskInstance& instance, std::string_view prediction);
ScoreOutcome shuffle_tokens(const std::vector<std::string>& original, std::string_view prediction, Language lang);
ScoreOutcome split_components(const std::vector<std::vector<std::string>>& options, std::string_view prediction);
ScoreOutcome diff_judge(const TaskInstance& instance, std::string_view prediction);
ScoreOutcome match_answer(const std::vector<std::string>& labels, std::string_view prediction);

// Target length for a LENOP generation instance; nullopt when neither metadata nor question gives one.
std::optional<int> target_length(const TaskInstance& instance);
// Original unit sequence for a REORD instance.
std::vector<std::string> reorder_original(const TaskInstance& instance);

// Extracts, then dispatches on evaluation_type.
ScoreOutcome evaluate_sample(const TaskInstance& instance, std::string_view raw_output);

// A model output that must score correct: the stored label or witness inside answer tags.
std::string reference_output(const TaskInstance& instance);

}  // namespace tokbench

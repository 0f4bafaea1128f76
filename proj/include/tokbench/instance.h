#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "tokbench/text.h"

namespace tokbench {

using Json = nlohmann::ordered_json;

enum class Task { FREQ, LENOP, DIFF, SORT, REORD, COMPC, COMPM, DOT, RIDL, VAR };

inline constexpr std::array<Task, 10> kTasks = {Task::FREQ,  Task::LENOP, Task::DIFF, Task::SORT, Task::REORD,
                                                Task::COMPC, Task::COMPM, Task::DOT,  Task::RIDL, Task::VAR};

std::string_view to_string(Task t);
Task parse_task(std::string_view s);  // case-insensitive
std::string lower(std::string_view s);

enum class EvalType { number, length, shuffle, split, diff, match_answer };

std::string_view to_string(EvalType e);
EvalType parse_eval_type(std::string_view s);

struct TaskInstance {
  std::string id;
  Task task = Task::FREQ;
  Language language = Language::en;
  EvalType evaluation_type = EvalType::number;
  std::string question;
  // String, list of strings, or (split) list of component lists.
  Json label;
  Json metadata = Json::object();

  // Acceptable answers as flat strings.
  std::vector<std::string> label_strings() const;
  std::vector<std::vector<std::string>> label_options() const;

  Json to_json() const;
  static TaskInstance from_json(const Json& j);
};

// "freq_en.jsonl"
std::string dataset_file_name(Task t, Language lang);

void write_jsonl(const std::filesystem::path& path, const std::vector<TaskInstance>& instances);
std::vector<TaskInstance> read_instances(const std::filesystem::path& path);

// Reads every non-blank line as a JSON value; throws ResourceError naming the line on parse errors.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

}  // namespace tokbench

#include "tokbench/instance.h"

#include <fstream>

#include "tokbench/errors.h"

namespace tokbench {

std::string_view to_string(Task t) {
  switch (t) {
    case Task::FREQ: return "FREQ";
    case Task::LENOP: return "LENOP";
    case Task::DIFF: return "DIFF";
    case Task::SORT: return "SORT";
    case Task::REORD: return "REORD";
    case Task::COMPC: return "COMPC";
    case Task::COMPM: return "COMPM";
    case Task::DOT: return "DOT";
    case Task::RIDL: return "RIDL";
    case Task::VAR: return "VAR";
  }
  return "?";
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  }
  return out;
}

Task parse_task(std::string_view s) {
  const std::string l = lower(s);
  for (auto t : kTasks) {
    if (lower(to_string(t)) == l) return t;
  }
  throw DomainError("unknown task \"" + std::string(s) + "\"");
}

std::string_view to_string(EvalType e) {
  switch (e) {
    case EvalType::number: return "number";
    case EvalType::length: return "length";
    case EvalType::shuffle: return "shuffle";
    case EvalType::split: return "split";
    case EvalType::diff: return "diff";
    case EvalType::match_answer: return "match_answer";
  }
  return "?";
}

EvalType parse_eval_type(std::string_view s) {
  for (auto e : {EvalType::number, EvalType::length, EvalType::shuffle, EvalType::split, EvalType::diff,
                 EvalType::match_answer}) {
    if (to_string(e) == s) return e;
  }
  throw DomainError("unknown evaluation_type \"" + std::string(s) + "\"");
}

std::vector<std::string> TaskInstance::label_strings() const {
  if (label.is_string()) return {label.get<std::string>()};
  std::vector<std::string> out;
  if (label.is_array()) {
    for (const auto& v : label) {
      if (v.is_string()) out.push_back(v.get<std::string>());
    }
  }
  return out;
}

std::vector<std::vector<std::string>> TaskInstance::label_options() const {
  std::vector<std::vector<std::string>> out;
  if (!label.is_array()) return out;
  for (const auto& opt : label) {
    if (opt.is_array()) out.push_back(opt.get<std::vector<std::string>>());
  }
  return out;
}

Json TaskInstance::to_json() const {
  Json j;
  j["id"] = id;
  j["task"] = std::string(to_string(task));
  j["language"] = std::string(to_string(language));
  j["evaluation_type"] = std::string(to_string(evaluation_type));
  j["question"] = question;
  j["label"] = label;
  j["metadata"] = metadata;
  return j;
}

TaskInstance TaskInstance::from_json(const Json& j) {
  TaskInstance t;
  try {
    t.id = j.at("id").get<std::string>();
    t.task = parse_task(j.at("task").get<std::string>());
    t.language = parse_language(j.at("language").get<std::string>());
    t.evaluation_type = parse_eval_type(j.at("evaluation_type").get<std::string>());
    t.question = j.at("question").get<std::string>();
    t.label = j.at("label");
    if (j.contains("metadata")) t.metadata = j.at("metadata");
  } catch (const Json::exception& e) {
    throw ResourceError(std::string("malformed task instance: ") + e.what());
  }
  if (t.question.empty()) throw ResourceError("instance " + t.id + " has an empty question");
  return t;
}

std::string dataset_file_name(Task t, Language lang) {
  return lower(to_string(t)) + "_" + std::string(to_string(lang)) + ".jsonl";
}

void write_jsonl(const std::filesystem::path& path, const std::vector<TaskInstance>& instances) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot write " + path.string());
  for (const auto& inst : instances) out << inst.to_json().dump() << '\n';
  if (!out) throw ResourceError("write failed for " + path.string());
}

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  std::vector<Json> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(Json::parse(line));
    } catch (const Json::parse_error& e) {
      throw ResourceError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::vector<TaskInstance> read_instances(const std::filesystem::path& path) {
  std::vector<TaskInstance> out;
  for (const auto& j : read_jsonl(path)) out.push_back(TaskInstance::from_json(j));
  return out;
}

}  // namespace tokbench

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tokbench/instance.h"

namespace tokbench {

enum class RewardMode { coarse, fine };

std::string_view to_string(RewardMode m);
RewardMode parse_reward_mode(std::string_view s);

// Symbols of the fine-grained reward algorithm; only the fields of the active branch are read.
struct RewardInput {
  EvalType t = EvalType::match_answer;
  std::string p;  // extracted prediction
  Json l;         // label
  std::string q;  // question
  bool binary_correct = false;  // EvalBin(p, l, q) for match_answer / diff
  int Lt = 0, Lp = 0;           // target and predicted length
  double Nl = 0, Np = 0;        // label and predicted number
  bool has_Np = false;
  std::vector<std::string> T1, T2;  // original and predicted tokens
  int A = 0;                        // predicted neighbours that were originally adjacent
  int N = 0;                        // |T1| - 1
  std::vector<std::vector<std::string>> Parts_o;  // label options
  std::vector<std::string> Parts_p;               // option components present in the prediction
};

struct RewardValue {
  double value = 0.0;
  std::string branch;
};

double coarse_reward(const TaskInstance& instance, std::string_view raw_output);
RewardValue fine_reward(const RewardInput& input);

// Best multiset overlap |Parts_p ∩ Parts_o| / |Parts_o| over the options.
double split_overlap(const std::vector<std::vector<std::string>>& options, std::string_view prediction);

RewardInput make_reward_input(const TaskInstance& instance, std::string_view raw_output);
RewardValue reward_for_sample(RewardMode mode, const TaskInstance& instance, std::string_view raw_output);

}  // namespace tokbench

#include "tokbench/rewards.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "tokbench/errors.h"
#include "tokbench/generators.h"
#include "tokbench/scoring.h"

namespace tokbench {

std::string_view to_string(RewardMode m) { return m == RewardMode::coarse ? "coarse" : "fine"; }

RewardMode parse_reward_mode(std::string_view s) {
  if (s == "coarse" || s == "reward-coarse") return RewardMode::coarse;
  if (s == "fine" || s == "reward-fine") return RewardMode::fine;
  throw DomainError("unknown reward mode \"" + std::string(s) + "\"");
}

double coarse_reward(const TaskInstance& instance, std::string_view raw_output) {
  return evaluate_sample(instance, raw_output).correct ? 1.0 : 0.0;
}

namespace {

int occurrences(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return 0;
  int n = 0;
  for (auto pos = haystack.find(needle); pos != std::string_view::npos; pos = haystack.find(needle, pos + needle.size())) {
    ++n;
  }
  return n;
}

bool same_multiset(std::vector<std::string> a, std::vector<std::string> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

}  // namespace

double split_overlap(const std::vector<std::vector<std::string>>& options, std::string_view prediction) {
  const auto segments = normalized_segments(prediction);
  double best = 0.0;
  for (const auto& opt : options) {
    if (opt.empty()) continue;
    std::map<std::string, int> need;
    for (const auto& c : opt) ++need[normalize_answer(c)];
    int hit = 0;
    for (const auto& [c, n] : need) {
      int found = 0;
      for (const auto& seg : segments) found += occurrences(seg, c);
      hit += std::min(n, found);
    }
    best = std::max(best, static_cast<double>(hit) / static_cast<double>(opt.size()));
  }
  return best;
}

RewardValue fine_reward(const RewardInput& in) {
  switch (in.t) {
    case EvalType::match_answer:
    case EvalType::diff: return {in.binary_correct ? 1.0 : 0.0, "binary"};
    case EvalType::split: return {split_overlap(in.Parts_o, in.p), "split"};
    case EvalType::shuffle: {
      if (!same_multiset(in.T1, in.T2)) return {0.0, "shuffle"};
      if (in.N <= 0) return {1.0, "shuffle"};
      return {std::clamp(1.0 - static_cast<double>(in.A) / in.N, 0.0, 1.0), "shuffle"};
    }
    case EvalType::length: {
      if (in.Lt <= 0) return {in.Lp == 0 ? 1.0 : 0.0, "length"};
      return {std::max(0.0, 1.0 - std::abs(in.Lp - in.Lt) / static_cast<double>(in.Lt)), "length"};
    }
    case EvalType::number: {
      if (!in.has_Np) return {0.0, "number"};
      const double d = in.Nl - in.Np;
      return {1.0 / (1.0 + d * d), "number"};
    }
  }
  throw DomainError("unknown evaluation type in reward input");
}

RewardInput make_reward_input(const TaskInstance& instance, std::string_view raw_output) {
  RewardInput in;
  in.t = instance.evaluation_type;
  in.p = extract_answer(raw_output);
  in.l = instance.label;
  in.q = instance.question;
  switch (in.t) {
    case EvalType::match_answer:
    case EvalType::diff: in.binary_correct = evaluate_sample(instance, raw_output).correct; break;
    case EvalType::split: {
      in.Parts_o = instance.label_options();
      const auto segments = normalized_segments(in.p);
      for (const auto& opt : in.Parts_o) {
        for (const auto& c : opt) {
          const std::string nc = normalize_answer(c);
          const bool present = !nc.empty() && std::any_of(segments.begin(), segments.end(), [&](const std::string& s) {
            return s.find(nc) != std::string::npos;
          });
          if (present) in.Parts_p.push_back(c);
        }
      }
      break;
    }
    case EvalType::shuffle: {
      in.T1 = reorder_original(instance);
      in.T2 = in.p.empty() ? std::vector<std::string>{} : tokenize_units(instance.language, in.p);
      in.N = static_cast<int>(in.T1.size()) - 1;
      in.A = adjacent_pair_count(in.T1, in.T2);
      break;
    }
    case EvalType::length: {
      const auto target = target_length(instance);
      if (!target) throw DomainError("instance " + instance.id + " has no target length");
      in.Lt = *target;
      in.Lp = static_cast<int>(tokenize_units(instance.language, in.p).size());
      break;
    }
    case EvalType::number: {
      const auto label = numeric_literals(instance.label_strings().at(0));
      if (label.empty()) throw DomainError("instance " + instance.id + " has a non-numeric label");
      in.Nl = label.front();
      const auto got = numeric_literals(in.p);
      in.has_Np = !got.empty();
      if (in.has_Np) in.Np = got.back();
      break;
    }
  }
  return in;
}

RewardValue reward_for_sample(RewardMode mode, const TaskInstance& instance, std::string_view raw_output) {
  if (mode == RewardMode::coarse) return {coarse_reward(instance, raw_output), "coarse"};
  return fine_reward(make_reward_input(instance, raw_output));
}

}  // namespace tokbench

#pragma once

// Scoring checks shared by the unit tests and the acceptance binary.

#include <random>

#include "oracles.h"
#include "test_paths.h"
#include "tokbench/scoring.h"

namespace tokbench::testing {

struct GoldenCase {
  std::string name;
  TaskInstance instance;
  std::string output;
  bool correct;
};

inline std::vector<GoldenCase> load_golden() {
  std::vector<GoldenCase> out;
  for (const auto& j : read_jsonl(fixture("scoring_golden.jsonl"))) {
    out.push_back({j.at("case"), TaskInstance::from_json(j.at("instance")), j.at("output"), j.at("correct")});
  }
  return out;
}

struct EquivalenceResult {
  int bases = 0;
  long long predictions = 0;
  std::vector<std::string> mismatches;
};

// For random bases of up to 8 units, every distinct permutation plus near-miss
// non-permutations are judged by shuffle_tokens and by the brute-force rule.
inline EquivalenceResult reord_equivalence(int bases, std::uint32_t seed) {
  static const std::vector<std::string> en_pool = {"ant", "bee", "cat", "dog", "eel", "fox"};
  static const std::vector<std::string> zh_pool = {"天", "地", "人", "山", "水", "火"};
  std::mt19937 rng(seed);
  EquivalenceResult res;
  for (int b = 0; b < bases; ++b) {
    const Language lang = b % 2 ? Language::zh : Language::en;
    const auto& pool = lang == Language::en ? en_pool : zh_pool;
    const std::string sep = lang == Language::en ? " " : "";
    const int n = 2 + static_cast<int>(rng() % 7);
    std::vector<std::string> base;
    // Draw from a pool smaller than n often enough to exercise repeated values.
    for (int i = 0; i < n; ++i) base.push_back(pool[rng() % pool.size()]);
    ++res.bases;

    auto judge = [&](const std::vector<std::string>& cand, bool expected) {
      ++res.predictions;
      const bool got = shuffle_tokens(base, oracle::join(cand, sep), lang).correct;
      if (got != expected && res.mismatches.size() < 10) {
        res.mismatches.push_back(oracle::join(base, sep) + " -> " + oracle::join(cand, sep));
      }
    };

    auto perm = base;
    std::sort(perm.begin(), perm.end());
    do {
      judge(perm, oracle::adjacency_free(base, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto shorter = base;
    shorter.pop_back();
    judge(shorter, false);
    auto longer = base;
    longer.push_back(pool[rng() % pool.size()]);
    judge(longer, false);
    auto swapped = base;
    swapped[rng() % swapped.size()] = lang == Language::en ? "zzz" : "龍";
    judge(swapped, false);
  }
  return res;
}

}  // namespace tokbench::testing

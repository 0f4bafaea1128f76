#pragma once

// Hand-computed fine-grained reward values, one row per formula case.

#include <string>
#include <vector>

#include "tokbench/rewards.h"

namespace tokbench::testing {

struct RewardRow {
  std::string name;
  RewardInput input;
  double expected;
};

inline RewardInput length_in(int lt, int lp) {
  RewardInput in;
  in.t = EvalType::length;
  in.Lt = lt;
  in.Lp = lp;
  return in;
}

inline RewardInput number_in(double nl, double np, bool has = true) {
  RewardInput in;
  in.t = EvalType::number;
  in.Nl = nl;
  in.Np = np;
  in.has_Np = has;
  return in;
}

inline RewardInput shuffle_in(std::vector<std::string> t1, std::vector<std::string> t2, int a) {
  RewardInput in;
  in.t = EvalType::shuffle;
  in.N = static_cast<int>(t1.size()) - 1;
  in.T1 = std::move(t1);
  in.T2 = std::move(t2);
  in.A = a;
  return in;
}

inline RewardInput split_in(std::vector<std::vector<std::string>> options, std::string p) {
  RewardInput in;
  in.t = EvalType::split;
  in.Parts_o = std::move(options);
  in.p = std::move(p);
  return in;
}

inline RewardInput binary_in(EvalType t, bool correct) {
  RewardInput in;
  in.t = t;
  in.binary_correct = correct;
  return in;
}

inline std::vector<RewardRow> reward_table() {
  return {
      {"length 10 vs 8", length_in(10, 8), 0.8},
      {"length exact", length_in(10, 10), 1.0},
      {"length 10 vs 12", length_in(10, 12), 0.8},
      {"length far over clamps", length_in(10, 25), 0.0},
      {"length double is zero", length_in(10, 20), 0.0},
      {"length Lt=0 Lp=0", length_in(0, 0), 1.0},
      {"length Lt=0 Lp=3", length_in(0, 3), 0.0},
      {"length 7 vs 5", length_in(7, 5), 0.7142857142857143},
      {"length 254 vs 250", length_in(254, 250), 0.984251968503937},
      {"length empty prediction", length_in(3, 0), 0.0},
      {"number 5 vs 3", number_in(5, 3), 0.2},
      {"number exact", number_in(5, 5), 1.0},
      {"number off by one", number_in(5, 6), 0.5},
      {"number 0 vs 10", number_in(0, 10), 0.009900990099009901},
      {"number fractional", number_in(2.5, 2), 0.8},
      {"number missing prediction", number_in(9, 0, false), 0.0},
      {"number sign flip", number_in(-1, 1), 0.2},
      {"shuffle one swap", shuffle_in({"a", "b", "c", "d"}, {"b", "a", "c", "d"}, 2), 1.0 / 3.0},
      {"shuffle valid", shuffle_in({"a", "b", "c", "d"}, {"b", "d", "a", "c"}, 0), 1.0},
      {"shuffle identity", shuffle_in({"a", "b", "c", "d"}, {"a", "b", "c", "d"}, 3), 0.0},
      {"shuffle N=0", shuffle_in({"a"}, {"a"}, 0), 1.0},
      {"shuffle dropped token", shuffle_in({"a", "b", "c"}, {"a", "b"}, 1), 0.0},
      {"shuffle foreign token", shuffle_in({"a", "b", "c"}, {"a", "b", "d"}, 1), 0.0},
      {"shuffle one pair kept", shuffle_in({"a", "b", "c", "d", "e"}, {"c", "a", "e", "d", "b"}, 1), 0.75},
      {"shuffle repeated values", shuffle_in({"x", "x", "y"}, {"x", "y", "x"}, 2), 0.0},
      {"split half", split_in({{"穴", "九"}}, "穴"), 0.5},
      {"split full", split_in({{"穴", "九"}}, "穴 九"), 1.0},
      {"split doubled component once", split_in({{"木", "木"}}, "木"), 0.5},
      {"split best option", split_in({{"穴", "九"}, {"宀", "八", "九"}}, "宀 八"), 2.0 / 3.0},
      {"split miss", split_in({{"fi", "nely"}}, "xyz"), 0.0},
      {"split jamo", split_in({{"ㅆ", "ㅗ", "ㄹ"}}, "ㅆ ㅗ ㄹ"), 1.0},
      {"match_answer correct", binary_in(EvalType::match_answer, true), 1.0},
      {"diff wrong", binary_in(EvalType::diff, false), 0.0},
  };
}

}  // namespace tokbench::testing

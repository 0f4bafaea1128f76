#pragma once

#include <string>
#include <vector>

#include <fmt/format.h>

#include "tokbench/errors.h"
#include "tokbench/generators.h"
#include "tokbench/rng.h"

namespace tokbench::gen {

inline std::string make_id(Task task, Language lang, std::size_t index) {
  return fmt::format("{}_{}_{:04d}", lower(to_string(task)), to_string(lang), index);
}

inline TaskInstance make_instance(Task task, const GenSpec& spec, std::size_t index, EvalType type) {
  TaskInstance t;
  t.id = make_id(task, spec.language, index);
  t.task = task;
  t.language = spec.language;
  t.evaluation_type = type;
  return t;
}

// Every length in [min_length, max_length] per_length times, shuffled and cut to `count`.
inline std::vector<int> length_pool(const GenSpec& spec, Rng& rng) {
  std::vector<int> pool;
  for (int n = spec.min_length; n <= spec.max_length; ++n) {
    for (int k = 0; k < spec.per_length; ++k) pool.push_back(n);
  }
  if (static_cast<int>(pool.size()) < spec.count) {
    throw GenerationError(fmt::format("{} instances requested but lengths {}-{} at {} per length allow only {}",
                                      spec.count, spec.min_length, spec.max_length, spec.per_length, pool.size()));
  }
  rng.shuffle(pool);
  pool.resize(spec.count);
  return pool;
}

// n consecutive corpus items from a random start.
inline std::vector<std::string> consecutive(const std::vector<std::string>& items, int n, Rng& rng) {
  if (static_cast<std::size_t>(n) > items.size()) {
    throw GenerationError(fmt::format("corpus of {} items is shorter than {}", items.size(), n));
  }
  const std::size_t start = rng.below(items.size() - n + 1);
  return {items.begin() + static_cast<std::ptrdiff_t>(start), items.begin() + static_cast<std::ptrdiff_t>(start + n)};
}

}  // namespace tokbench::gen

#include "tokbench/errors.h"

namespace tokbench {

ValidationError::ValidationError(std::vector<std::string> problems)
    : std::runtime_error([&] {
        std::string msg = std::to_string(problems.size()) + " validation problem(s)";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

}  // namespace tokbench

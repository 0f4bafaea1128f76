#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tokbench {

// Input outside an operation's domain (bad code point, short token, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Lookup key absent from a resource table.
class NotFoundError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Resource file missing or malformed.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generator could not satisfy its constraints with the given resources.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All bitmap sources missed or produced blank glyphs.
class RenderError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Collected configuration/resource problems, reported together.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

}  // namespace tokbench

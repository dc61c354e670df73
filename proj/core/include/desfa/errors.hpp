#pragma once

#include <stdexcept>
#include <string>

namespace desfa {

/// Precondition or configuration violations (bad k, empty dataset, ...).
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// Malformed input files. Messages carry file and line where known.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace desfa

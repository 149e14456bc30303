#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace epimc {

// Malformed formula text. Column is 1-based.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& msg, std::size_t column)
      : std::runtime_error(msg + " (column " + std::to_string(column) + ")"),
        column_(column) {}

  std::size_t column() const { return column_; }

private:
  std::size_t column_;
};

// Model construction or validation failure. When the failure comes from a
// model document, path locates the offending element (JSON-pointer style).
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& msg, std::string path = {})
      : std::runtime_error(path.empty() ? msg : msg + " at " + path),
        path_(std::move(path)) {}

  const std::string& path() const { return path_; }

private:
  std::string path_;
};

// Evaluation contract violation: unmapped proposition, Khat reaching the
// possible-worlds evaluator, missing setup coverage, and the like.
class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace epimc

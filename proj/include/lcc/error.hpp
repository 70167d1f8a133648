#pragma once

#include <stdexcept>
#include <string>

namespace lcc {

// Domain error: a violated precondition or malformed input.
class Error : public std::runtime_error {
 public:
  Error(std::string precondition, const std::string& what)
      : std::runtime_error(what), precondition_(std::move(precondition)) {}
  explicit Error(const std::string& what) : Error("", what) {}

  const std::string& precondition() const noexcept { return precondition_; }

 private:
  std::string precondition_;
};

// Grammar error in a configuration or predicate string.
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("grammar", what) {}
};

}  // namespace lcc

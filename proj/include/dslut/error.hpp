#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dslut {

/// Caller violated a precondition (bad arity, out-of-range argument, ...).
class UsageError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed input file. `line()` is 1-based, 0 when not line-oriented.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_;
};

/// Broken internal invariant; indicates a bug rather than bad input.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace dslut

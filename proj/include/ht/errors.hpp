#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ht {

// Failure while reading an input file; line numbers are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Label distribution unusable for the evaluation protocol (single class,
// or no fold split with two-class tuning data).
class DegenerateDataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A text that yields no usable (in-vocabulary, nonzero) word vectors.
class ZeroContentError : public std::runtime_error {
 public:
  enum class Side { document, summary };

  ZeroContentError(const std::string& msg, Side side)
      : std::runtime_error(msg), side_(side) {}

  Side side() const { return side_; }

 private:
  Side side_;
};

}  // namespace ht

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trustbias {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed edge-list input. `line()` is 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class EmptyGraphError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A bias variant used on a graph whose signedness it does not support.
class VariantMismatchError : public Error {
 public:
  using Error::Error;
};

/// A parameter outside its mathematical domain (lambda, epsilon, ratios...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class DegreeError : public Error {
 public:
  using Error::Error;
};

/// AUC requested with a label set that is all-positive or all-negative.
class UndefinedAucError : public Error {
 public:
  using Error::Error;
};

}  // namespace trustbias

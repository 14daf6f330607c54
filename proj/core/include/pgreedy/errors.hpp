#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgreedy {

/// Base of every error raised by the library. `kind()` is a stable machine
/// token used by the command-line tool when it reports failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual std::string_view kind() const noexcept = 0;
};

/// Malformed arguments: wrong dimension, p out of range, bad config values.
class InputError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "input"; }
};

/// An enumeration would exceed a configured cap.
class SizeError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "size"; }
};

/// A documented precondition on a mathematical object was violated,
/// e.g. truncating along a set that is not greedy.
class ContractError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "contract"; }
};

/// A phase needs an artifact produced by an earlier phase.
class DependencyError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "dependency"; }
};

/// A defining ratio had a zero denominator with a positive numerator.
class DegenerateNormError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "degenerate"; }
};

/// Reading or writing an artifact failed.
class IoError : public Error {
 public:
  using Error::Error;
  std::string_view kind() const noexcept override { return "io"; }
};

}  // namespace pgreedy

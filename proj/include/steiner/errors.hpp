#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace steiner {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. `position` is a 0-based character offset for
/// single-line inputs and a 1-based line number for file formats.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// A structurally valid input violates a semantic invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class UnknownCandidate : public Error {
 public:
  using Error::Error;
};

class FactorBudgetExceeded : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

class NotAnAutomorphism : public Error {
 public:
  using Error::Error;
};

/// An internal construction failed its own consistency check.
class SelfCheckFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace steiner

#pragma once

#include <stdexcept>
#include <string>
#include <vector>
#include <array>

namespace quadpois {

// Base of every error thrown by the core. The C API maps each subclass to a
// distinct status code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed fixture, script or polynomial text.
class ParseError : public Error {
 public:
  using Error::Error;
};

// An operation was called outside its domain (n out of range, alpha := 0, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Operands that cannot be combined (length mismatch, different variable sets).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A consistency check between two independent computations failed. This
// always indicates a bug in a sign or normalization convention.
class InternalError : public Error {
 public:
  using Error::Error;
};

// The 2-form handed to central_extension is not a cocycle.
class CocycleViolation : public Error {
 public:
  explicit CocycleViolation(std::vector<std::array<int, 3>> triples);
  const std::vector<std::array<int, 3>>& triples() const { return triples_; }

 private:
  std::vector<std::array<int, 3>> triples_;
};

}  // namespace quadpois

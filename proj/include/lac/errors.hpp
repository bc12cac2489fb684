#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lac {

// Base of every error the engine raises on bad input. Internal invariant
// violations use std::logic_error instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariableError : public Error {
 public:
  explicit UnknownVariableError(std::string name, std::size_t position = 0)
      : Error("unknown variable '" + name + "'"), name_(std::move(name)), position_(position) {}

  const std::string& name() const { return name_; }
  /// Offset of the name in the parsed text, 0 outside the parser.
  std::size_t position() const { return position_; }

 private:
  std::string name_;
  std::size_t position_;
};

// Table dimensions, index ranges, storage-convention violations.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Operands that live over different algebroids, ranks or variances.
class MismatchError : public Error {
 public:
  using Error::Error;
};

// A precondition requiring verified structure (Lie algebroid axioms,
// [Λ,Λ] = 0, δ² = 0) was not met.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace lac

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pluri {

/// Malformed expression text. `position()` is the 0-based byte offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Evaluation produced a non-finite value (overflow, NaN input, ...).
class NumericDomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input: arity mismatch, bad index, wrong sizes.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A computation would exceed a configured size cap.
class SizeGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Geometric precondition violated (e.g. rank-deficient tangent space).
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pluri

namespace pluri {

/// A document (JSON data file, relation file) does not match its schema.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pluri

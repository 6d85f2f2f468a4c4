#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace biorth {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Ambient dimensions of the arguments do not fit together.
class DimensionError : public Error {
public:
  using Error::Error;
};

// A vector frame that is not orthonormal (beyond repair tolerance).
class FrameError : public Error {
public:
  FrameError(const std::string& what, double defect)
      : Error(what), defect_(defect) {}
  double defect() const noexcept { return defect_; }

private:
  double defect_;
};

// Raw matrix rejected as a curvature operator.
class InvalidOperator : public Error {
public:
  enum class Kind { Size, Symmetry, Bianchi };

  InvalidOperator(Kind kind, const std::string& what, double defect)
      : Error(what), kind_(kind), defect_(defect) {}
  Kind kind() const noexcept { return kind_; }
  double defect() const noexcept { return defect_; }

private:
  Kind kind_;
  double defect_;
};

// Integer matrix rejected as an intersection form.
class InvalidForm : public Error {
public:
  using Error::Error;
};

class NotUnimodular : public InvalidForm {
public:
  NotUnimodular(const std::string& what, std::string determinant)
      : InvalidForm(what), determinant_(std::move(determinant)) {}
  const std::string& determinant() const noexcept { return determinant_; }

private:
  std::string determinant_;
};

// Internal consistency failure (an impossible invariant combination).
class InvariantViolation : public Error {
public:
  using Error::Error;
};

// Connected-sum expression that does not match the grammar.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

// A precondition on an argument that is not a dimension mismatch.
class PreconditionError : public Error {
public:
  using Error::Error;
};

// Malformed input document (file format, missing fields, wrong types).
class InputError : public Error {
public:
  using Error::Error;
};

// Numerical procedure failed to produce a trustworthy answer.
class NumericalFailure : public Error {
public:
  using Error::Error;
};

} // namespace biorth

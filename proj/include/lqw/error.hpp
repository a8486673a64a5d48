#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lqw {

// Base for every error raised by the library. Callers that only need to
// distinguish "bad input" from "numerical failure" can catch the two
// intermediate classes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NotNormalized : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DegenerateMomentum : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class GridTooSmall : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DomainError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class UnsupportedInitialState : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class DegenerateSeries : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class QuadratureError : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

class ParseError : public InvalidInput {
 public:
  ParseError(const std::string& message, std::size_t position)
      : InvalidInput(message), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace lqw

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace crosscap {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derivative word or evaluation needs more jet information than is stored.
class OrderExhausted : public Error {
 public:
  using Error::Error;
};

/// An operation was called on input that violates its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Malformed user input (documents, coefficient tables, flags).
class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " at position " + std::to_string(position)), position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace crosscap

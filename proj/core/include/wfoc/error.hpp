#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wfoc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input: unknown state or letter, bad file, ill-typed call.
class InputError : public Error {
 public:
  using Error::Error;
};

class SyntaxError : public InputError {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : InputError(message + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class ScopeError : public InputError {
 public:
  using InputError::InputError;
};

// A construction was refused because a hypothesis of the underlying theorem
// does not hold. witness() describes the violation (a word, two runs, ...).
class HypothesisError : public Error {
 public:
  HypothesisError(const std::string& message, std::string witness)
      : Error(message + (witness.empty() ? "" : ": " + witness)), witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

// A configured resource cap (monoid size, product size) was exceeded.
class LimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace wfoc

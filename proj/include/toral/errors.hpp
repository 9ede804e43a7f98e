#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace toral {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : Error(msg + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Raised by exact division; carries the serialized remainder as witness.
class NotDivisibleError : public Error {
 public:
  NotDivisibleError(const std::string& msg, std::string remainder)
      : Error(msg + " (remainder " + remainder + ")"), remainder_(std::move(remainder)) {}
  const std::string& remainder() const noexcept { return remainder_; }

 private:
  std::string remainder_;
};

/// Input outside the supported domain (zero polynomial, too many variables, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A numeric step could not be certified at the available precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// Internal consistency check failed; never expected on valid input.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace toral

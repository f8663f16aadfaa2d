#pragma once

#include <stdexcept>
#include <string>

namespace endobench {

// Base for every error the toolkit raises. The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown corruption tag, severity outside [0, 5], malformed spec.
class InvalidSpecError : public Error {
 public:
  using Error::Error;
};

// Severity parameter table incomplete or inconsistent.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Operands with incompatible dimensions.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// File missing, unreadable, unwritable, or failing to parse.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed table or document content.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Inputs that make a metric undefined (empty mask, zero median, A = 0).
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

}  // namespace endobench

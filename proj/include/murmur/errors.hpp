#pragma once

#include <stdexcept>
#include <string>

namespace murmur {

// Error categories map onto the CLI exit codes: usage -> 1, data -> 2,
// numeric -> 3.
enum class ErrorKind { usage, data, numeric };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

// Argument outside the documented domain of an operation.
class DomainError : public Error {
public:
  explicit DomainError(const std::string& msg) : Error(ErrorKind::usage, msg) {}
};

// A table or zero list does not cover the requested range.
class BoundsError : public Error {
public:
  explicit BoundsError(const std::string& msg) : Error(ErrorKind::usage, msg) {}
};

// Malformed or inconsistent input data (files, ingested corpora).
class DataError : public Error {
public:
  explicit DataError(const std::string& msg) : Error(ErrorKind::data, msg) {}
};

// Numerical diagnostic failure: missed zeros, phase convention breakdown,
// insufficient accuracy parameters.
class NumericError : public Error {
public:
  explicit NumericError(const std::string& msg) : Error(ErrorKind::numeric, msg) {}
};

} // namespace murmur

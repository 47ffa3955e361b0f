#pragma once

#include <stdexcept>
#include <string>

namespace obscorr {

// Error categories map one-to-one onto the CLI exit codes.
enum class ErrorKind {
  usage = 1,
  data_quality = 2,
  io = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

 private:
  ErrorKind kind_;
};

/// Caller broke a precondition (bad arguments, empty input where one is required).
class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

/// Input data is malformed, inconsistent, or too noisy to trust.
class DataQualityError : public Error {
 public:
  explicit DataQualityError(const std::string& what) : Error(ErrorKind::data_quality, what) {}
};

/// Malformed textual field; carries the offending text.
class ParseError : public DataQualityError {
 public:
  ParseError(const std::string& what, std::string offending)
      : DataQualityError(what + ": '" + offending + "'"), offending_(std::move(offending)) {}

  const std::string& offending() const noexcept { return offending_; }

 private:
  std::string offending_;
};

/// A 64-bit packet-count accumulator overflowed. Only corrupt input gets here.
class ArithmeticError : public DataQualityError {
 public:
  explicit ArithmeticError(const std::string& what) : DataQualityError(what) {}
};

/// A fit has nothing to fit (e.g. an all-zero correlation curve).
class DegenerateFitError : public DataQualityError {
 public:
  explicit DegenerateFitError(const std::string& what) : DataQualityError(what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::io, what) {}
};

}  // namespace obscorr

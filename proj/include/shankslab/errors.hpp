#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace shankslab {

// Base of every error raised by the library. Failures that are data (for
// example a verification mismatch) are reported in result structs instead.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the supported domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Evaluation requested too close to the pole of zeta at s = 1.
class PoleError : public Error {
 public:
  using Error::Error;
};

// The Euler-Maclaurin remainder estimate exceeds the requested accuracy.
class AccuracyError : public Error {
 public:
  AccuracyError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}
  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

// Internal self-check failed (e.g. Z(t) came out with a large imaginary part).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// A height T beyond the verified range of a zero table, or a cost guard.
class RangeError : public Error {
 public:
  using Error::Error;
};

class SieveLimitError : public Error {
 public:
  using Error::Error;
};

class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

// The Gram-block scan could not reconcile the sign-change count.
class MissedZeroError : public Error {
 public:
  MissedZeroError(const std::string& what, double block_start, double block_end)
      : Error(what), block_start_(block_start), block_end_(block_end) {}
  double block_start() const noexcept { return block_start_; }
  double block_end() const noexcept { return block_end_; }

 private:
  double block_start_;
  double block_end_;
};

// Malformed text input; line is 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// File could not be opened, read or written. offset is the byte offset of a
// truncation or format problem in binary input, or npos when not applicable.
class IoError : public Error {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit IoError(const std::string& what, std::size_t offset = npos)
      : Error(what), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace shankslab

#pragma once

#include <stdexcept>
#include <string>

namespace conformetrics {

// Failure classes. The CLI maps each onto a stable process exit code.
enum class ErrorKind {
  usage = 2,   // bad flags, bad selection expressions, bad config values
  format = 3,  // malformed input files
  numeric = 4, // numerical failures (NaN, divergence, degenerate geometry)
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }
  int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
  ErrorKind kind_;
};

class UsageError : public Error {
public:
  explicit UsageError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class FormatError : public Error {
public:
  explicit FormatError(const std::string& what) : Error(ErrorKind::format, what) {}
};

class NumericError : public Error {
public:
  explicit NumericError(const std::string& what) : Error(ErrorKind::numeric, what) {}
};

// Selection query could not be parsed; `position` is the 0-based column of the offending token.
class SelectionSyntaxError : public UsageError {
public:
  SelectionSyntaxError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

} // namespace conformetrics

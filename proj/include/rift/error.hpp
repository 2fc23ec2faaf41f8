#pragma once

#include <stdexcept>
#include <string>

namespace rift {

/// Broad failure classes. Each maps to one CLI exit code.
enum class ErrorKind { usage, data, provider };

/// Base exception for everything the library throws on purpose.
///
/// `code` is a stable snake_case identifier (e.g. "duplicate_label") that the
/// review service returns verbatim in `{code, message}` error bodies.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

class UsageError : public Error {
 public:
  UsageError(std::string code, const std::string& message)
      : Error(ErrorKind::usage, std::move(code), message) {}
};

class DataError : public Error {
 public:
  DataError(std::string code, const std::string& message)
      : Error(ErrorKind::data, std::move(code), message) {}
};

class ProviderError : public Error {
 public:
  ProviderError(std::string code, const std::string& message, bool transient = false)
      : Error(ErrorKind::provider, std::move(code), message), transient_(transient) {}

  bool transient() const noexcept { return transient_; }

 private:
  bool transient_;
};

inline int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::usage:
      return 1;
    case ErrorKind::data:
      return 2;
    case ErrorKind::provider:
      return 3;
  }
  return 2;
}

}  // namespace rift

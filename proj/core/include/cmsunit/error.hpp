#pragma once

#include <stdexcept>
#include <string>

namespace cmsunit {

enum class ErrorKind {
  InvalidArgument,
  PrecisionExhausted,
  ZeroInput,
  DomainError,
  CaseUndefined,
  NotFound,
  NonIntegral,
  IncompleteFactorization,
};

/// Base exception for every failure raised by the library. The kind maps
/// one-to-one onto CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace cmsunit

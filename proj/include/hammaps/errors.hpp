#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hammaps {

// Exit codes used by the command-line front end. Every exception below maps
// onto exactly one of them.
enum class ExitCode : int {
  kOk = 0,
  kInvalidInput = 2,
  kCapExceeded = 3,
  kInternalInconsistency = 4,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

// Bad parameters: non-prime p, malformed polynomial strings, mismatched
// operands, unsupported graph families.
class InvalidInput : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kInvalidInput; }
};

// A configured size cap was hit. `partial` carries how far the computation got.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::size_t partial = 0)
      : Error(what), partial_(partial) {}
  std::size_t partial() const noexcept { return partial_; }
  ExitCode exit_code() const noexcept override { return ExitCode::kCapExceeded; }

 private:
  std::size_t partial_;
};

// A cross-check between two independent routes failed. Never expected.
class ConsistencyError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override {
    return ExitCode::kInternalInconsistency;
  }
};

}  // namespace hammaps

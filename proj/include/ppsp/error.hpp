#pragma once

#include <stdexcept>
#include <string>

namespace ppsp {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidParams,
  kParameterViolation,
  kFraming,
  kPrimeSearchExhausted,
  kNotInvertible,
  kVariantMismatch,
  kIo,
};

const char* to_string(ErrorCode code);

// Single exception type for the core; the C layer maps `code()` to a status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ppsp

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace abelat {

enum class ErrorCode {
  kParse,
  kInvalidArgument,
  kNotWellRounded,
  kHypothesisViolation,
  kCapExceeded,
  kBudgetExhausted,
  kVerificationFailed,
};

// Stable, machine-readable name used in JSON error payloads.
std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace abelat

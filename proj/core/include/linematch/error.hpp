#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace linematch {

enum class ErrorCode {
  UnsortedServers,
  MinGapViolation,
  RequestOffServer,
  TooManyRequests,
  SizeMismatch,
  TooLarge,
  IndexOutOfRange,
  BadIndices,
  BothInfinite,
  NoAvailableServer,
  NotATrigger,
  DomainError,
  DegenerateInterval,
  BadParams,
  Io,
  Parse,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Absolute tolerance for comparing costs.
inline constexpr double kCostTolerance = 1e-9;

}  // namespace linematch

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wdc {

enum class ErrorCode {
  NotPrimePower,
  UnsupportedOrder,
  ReduciblePolynomial,
  ZeroInverse,
  FieldMismatch,
  DimensionMismatch,
  LengthExceedsField,
  InvalidParameters,
  NotSystematic,
  LengthMismatch,
  TooLargeForExhaustive,
  MissingPackets,
  StrategyCodeMismatch,
  NoUndetectableError,
  NoCodeAvailable,
  ConfigError,
  IoError,
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

}  // namespace wdc

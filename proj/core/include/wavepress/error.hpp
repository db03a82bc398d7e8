#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace wavepress {

enum class ErrorCode {
  UnsupportedWavelet,
  DimensionTooSmall,
  LengthMismatch,
  TooManyLevels,
  InsufficientDepth,
  EmptyTable,
  InvalidTruncation,
  DimensionMismatch,
  RankDeficient,
  EmptyFile,
  BadMagic,
  TruncatedFile,
  KeyCountMismatch,
  EmptyDataset,
  NonNumericScore,
  InvalidDataset,
  ZeroVector,
  DegenerateInput,
  InsufficientCoverage,
  UnknownKey,
  ClassMissingInTrain,
  NonFiniteLoss,
  InvalidArgument,
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (and tests) can branch on the kind of failure, not the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace wavepress

#include "wavepress/error.hpp"

namespace wavepress {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnsupportedWavelet: return "UnsupportedWavelet";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TooManyLevels: return "TooManyLevels";
    case ErrorCode::InsufficientDepth: return "InsufficientDepth";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::InvalidTruncation: return "InvalidTruncation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::KeyCountMismatch: return "KeyCountMismatch";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::NonNumericScore: return "NonNumericScore";
    case ErrorCode::InvalidDataset: return "InvalidDataset";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InsufficientCoverage: return "InsufficientCoverage";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::ClassMissingInTrain: return "ClassMissingInTrain";
    case ErrorCode::NonFiniteLoss: return "NonFiniteLoss";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace wavepress

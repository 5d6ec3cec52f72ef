#include "holo/error.hpp"

namespace holo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConstantImage: return "ConstantImage";
    case ErrorCode::PhaseOverflow: return "PhaseOverflow";
    case ErrorCode::EmptyPatternSet: return "EmptyPatternSet";
    case ErrorCode::MixedEncodingModes: return "MixedEncodingModes";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::MatrixTooLarge: return "MatrixTooLarge";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedPgm: return "MalformedPgm";
    case ErrorCode::MalformedMemoryFile: return "MalformedMemoryFile";
    case ErrorCode::DatasetEmpty: return "DatasetEmpty";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace holo

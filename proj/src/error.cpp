#include "rashomon/error.hpp"

namespace rashomon {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kEmptyFile: return "EmptyFile";
    case ErrorCode::kNonNumericCell: return "NonNumericCell";
    case ErrorCode::kLabelCardinality: return "LabelCardinality";
    case ErrorCode::kMissingColumn: return "MissingColumn";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNonBinaryData: return "NonBinaryData";
    case ErrorCode::kNonBinaryPrediction: return "NonBinaryPrediction";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kTractability: return "Tractability";
    case ErrorCode::kOptimizerDivergence: return "OptimizerDivergence";
    case ErrorCode::kGeneratorMismatch: return "GeneratorMismatch";
    case ErrorCode::kConfig: return "Config";
    case ErrorCode::kIo: return "Io";
  }
  return "Unknown";
}

}  // namespace rashomon

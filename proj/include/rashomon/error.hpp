#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rashomon {

enum class ErrorCode {
  kMissingFile,
  kEmptyFile,
  kNonNumericCell,
  kLabelCardinality,
  kMissingColumn,
  kInvalidArgument,
  kLengthMismatch,
  kOutOfRange,
  kNonBinaryData,
  kNonBinaryPrediction,
  kCapExceeded,
  kTractability,
  kOptimizerDivergence,
  kGeneratorMismatch,
  kConfig,
  kIo,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// CLI can map it onto an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) throw Error(code, message);
}

}  // namespace rashomon

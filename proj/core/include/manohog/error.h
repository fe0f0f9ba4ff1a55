#ifndef MANOHOG_ERROR_H_
#define MANOHOG_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace manohog {

enum class ErrorCode {
  kInvalidArgument,
  // ingest
  kFileNotFound,
  kUnsupportedFormat,
  kCorruptImage,
  kMalformedLine,
  kUnknownLabel,
  kEmptyDataset,
  // colormask / roi / hog
  kDimensionMismatch,
  kNoSignal,
  kOutOfBounds,
  kImageTooSmall,
  // svm
  kSingleClassInput,
  kNonFiniteFeature,
  kIo,
  kBadMagic,
  kVersionUnsupported,
  kChecksumMismatch,
  // metrics
  kLengthMismatch,
  kUnknownClass,
  kNameCountMismatch,
  // synth
  kTooSmall,
  // pipeline
  kDigestMismatch,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as Error. The message is prefixed with
// the code name so that it reads well when printed verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace manohog

#endif  // MANOHOG_ERROR_H_

#pragma once

#include <stdexcept>
#include <string>

namespace specden {

enum class ErrorCode {
  kInvalidArgument,
  kShapeMismatch,
  kOutOfBounds,
  kMissingFile,
  kUnsupportedFormat,
  kCorruptHeader,
  kUnwritablePath,
  kEmptyInput,
  kNonFinite,
  kParse,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable error code. Every failure raised by
/// the library is an `Error`.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace specden

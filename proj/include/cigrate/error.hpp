#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cigrate {

// Stable error codes surfaced across the library and the CLI.
enum class ErrorCode {
  YamlSyntax,
  MultiDoc,
  RootNotMapping,
  DupKey,
  Utf8,
  AmbiguousDialect,
  WrongDialect,
  EmptyPipeline,
  SameDialect,
  InsufficientExamples,
  Http,
  Timeout,
  EmptyResponse,
  Auth,
  UnparseableOutput,
  EmptySplit,
  EmptyCorpus,
  AllZeroDiffs,
  LengthMismatch,
  DialectMismatch,
  Empty,
  ManifestMissing,
  PairFileMissing,
  CountMismatch,
  NoOverlap,
  Io,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code),
        message_(message) {}

  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

}  // namespace cigrate

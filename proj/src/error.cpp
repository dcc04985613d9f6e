#include "cigrate/error.hpp"

namespace cigrate {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::YamlSyntax: return "E_YAML_SYNTAX";
    case ErrorCode::MultiDoc: return "E_MULTI_DOC";
    case ErrorCode::RootNotMapping: return "E_ROOT_NOT_MAPPING";
    case ErrorCode::DupKey: return "E_DUP_KEY";
    case ErrorCode::Utf8: return "E_UTF8";
    case ErrorCode::AmbiguousDialect: return "E_AMBIGUOUS_DIALECT";
    case ErrorCode::WrongDialect: return "E_WRONG_DIALECT";
    case ErrorCode::EmptyPipeline: return "E_EMPTY_PIPELINE";
    case ErrorCode::SameDialect: return "E_SAME_DIALECT";
    case ErrorCode::InsufficientExamples: return "E_INSUFFICIENT_EXAMPLES";
    case ErrorCode::Http: return "E_HTTP";
    case ErrorCode::Timeout: return "E_TIMEOUT";
    case ErrorCode::EmptyResponse: return "E_EMPTY_RESPONSE";
    case ErrorCode::Auth: return "E_AUTH";
    case ErrorCode::UnparseableOutput: return "E_UNPARSEABLE_OUTPUT";
    case ErrorCode::EmptySplit: return "E_EMPTY_SPLIT";
    case ErrorCode::EmptyCorpus: return "E_EMPTY_CORPUS";
    case ErrorCode::AllZeroDiffs: return "E_ALL_ZERO_DIFFS";
    case ErrorCode::LengthMismatch: return "E_LENGTH_MISMATCH";
    case ErrorCode::DialectMismatch: return "E_DIALECT_MISMATCH";
    case ErrorCode::Empty: return "E_EMPTY";
    case ErrorCode::ManifestMissing: return "E_MANIFEST_MISSING";
    case ErrorCode::PairFileMissing: return "E_PAIR_FILE_MISSING";
    case ErrorCode::CountMismatch: return "E_COUNT_MISMATCH";
    case ErrorCode::NoOverlap: return "E_NO_OVERLAP";
    case ErrorCode::Io: return "E_IO";
  }
  return "E_UNKNOWN";
}

}  // namespace cigrate

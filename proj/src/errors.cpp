#include "slice/errors.hpp"

namespace slice {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
    case ErrorCode::MalformedDict: return "MalformedDict";
    case ErrorCode::KeySetMismatch: return "KeySetMismatch";
    case ErrorCode::MissingTag: return "MissingTag";
    case ErrorCode::DuplicateTag: return "DuplicateTag";
    case ErrorCode::UnexpectedThinkBlock: return "UnexpectedThinkBlock";
    case ErrorCode::UnclosedTag: return "UnclosedTag";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::UnsupportedLanguage: return "UnsupportedLanguage";
    case ErrorCode::EmptyScript: return "EmptyScript";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::UnlabeledScript: return "UnlabeledScript";
    case ErrorCode::MissingFeatures: return "MissingFeatures";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateGoldTask: return "DuplicateGoldTask";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::EndpointUnreachable: return "EndpointUnreachable";
    case ErrorCode::RequestFailed: return "RequestFailed";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IncompatibleReports: return "IncompatibleReports";
    }
    return "Error";
}

int exit_class(ErrorCode code) {
    switch (code) {
    case ErrorCode::IoError:
        return 2;
    case ErrorCode::MalformedDict:
    case ErrorCode::KeySetMismatch:
    case ErrorCode::MalformedRecord:
    case ErrorCode::DuplicateGoldTask:
    case ErrorCode::EmptyScript:
    case ErrorCode::EmptyCorpus:
    case ErrorCode::MissingFeatures:
    case ErrorCode::UnlabeledScript:
        return 3;
    case ErrorCode::InvalidWeights:
    case ErrorCode::UnsupportedLanguage:
    case ErrorCode::ConfigError:
    case ErrorCode::IncompatibleReports:
    case ErrorCode::ArityMismatch:
        return 4;
    default:
        return 1;
    }
}

} // namespace slice

#ifndef SLICE_ERRORS_HPP
#define SLICE_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace slice {

/// Error taxonomy for the whole toolkit. CLI exit codes are derived from
/// these via exit_class().
enum class ErrorCode {
    // lineage dictionaries
    MalformedDict,
    KeySetMismatch,
    // response scaffolding
    MissingTag,
    DuplicateTag,
    UnexpectedThinkBlock,
    UnclosedTag,
    // metric configuration
    InvalidWeights,
    UnsupportedLanguage,
    // corpus handling
    EmptyScript,
    EmptyCorpus,
    UnlabeledScript,
    MissingFeatures,
    IoError,
    MalformedRecord,
    DuplicateGoldTask,
    // prompting / extraction
    ArityMismatch,
    EndpointUnreachable,
    RequestFailed,
    // configuration files and reports
    ConfigError,
    IncompatibleReports,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Exit-status classes for the CLI: 0 ok, 1 findings/other, 2 I/O,
/// 3 malformed input data, 4 configuration.
int exit_class(ErrorCode code);

} // namespace slice

#endif // SLICE_ERRORS_HPP

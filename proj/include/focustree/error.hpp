#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace focustree {

// Machine-readable failure categories. The names double as the error codes
// reported by the service and the CLI.
enum class ErrorCode {
    // embedding_io
    MissingColumn,
    NonFiniteCoordinate,
    DuplicateId,
    RaggedFeatures,
    EmptyDataset,
    ParseError,
    IoFailure,
    // sampler / hierarchy
    EmptyInput,
    InvalidConfig,
    NoRepresentatives,
    FingerprintMismatch,
    // focus layout
    OutOfRange,
    NotAChild,
    AlreadyFocused,
    EmptyStack,
    NotComparing,
    ComparisonActive,
    FocusActive,
    InvalidLevel,
    // overlap removal
    TooManyMarkers,
    NonConvergence,
    // service
    UnknownDataset,
    UnknownSession,
    UnknownNode,
    NotALeaf,
    BuildFailure,
    BadRequest,
    InvalidArgs,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view code_name() const noexcept { return to_string(code_); }

private:
    ErrorCode code_;
};

}  // namespace focustree

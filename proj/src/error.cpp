#include "focustree/error.hpp"

namespace focustree {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::NonFiniteCoordinate: return "NonFiniteCoordinate";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::RaggedFeatures: return "RaggedFeatures";
    case ErrorCode::EmptyDataset: return "EmptyDataset";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::NoRepresentatives: return "NoRepresentatives";
    case ErrorCode::FingerprintMismatch: return "FingerprintMismatch";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotAChild: return "NotAChild";
    case ErrorCode::AlreadyFocused: return "AlreadyFocused";
    case ErrorCode::EmptyStack: return "EmptyStack";
    case ErrorCode::NotComparing: return "NotComparing";
    case ErrorCode::ComparisonActive: return "ComparisonActive";
    case ErrorCode::FocusActive: return "FocusActive";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::TooManyMarkers: return "TooManyMarkers";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::UnknownDataset: return "UnknownDataset";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::NotALeaf: return "NotALeaf";
    case ErrorCode::BuildFailure: return "BuildFailure";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::InvalidArgs: return "InvalidArgs";
    }
    return "Unknown";
}

}  // namespace focustree

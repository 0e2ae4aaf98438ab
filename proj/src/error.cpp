#include "hdqss/error.hpp"

namespace hdqss {

const char* name(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::DuplicateAgent: return "DuplicateAgent";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::UnknownBoss: return "UnknownBoss";
    case ErrorCode::CannotRevokeRoot: return "CannotRevokeRoot";
    case ErrorCode::LevelMismatch: return "LevelMismatch";
    case ErrorCode::NotAChild: return "NotAChild";
    case ErrorCode::NotPrimary: return "NotPrimary";
    case ErrorCode::NotLocked: return "NotLocked";
    case ErrorCode::AlreadyLocked: return "AlreadyLocked";
    case ErrorCode::AlreadyDisclosed: return "AlreadyDisclosed";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyTree: return "EmptyTree";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::MissingParticipant: return "MissingParticipant";
    case ErrorCode::InvalidPermutation: return "InvalidPermutation";
    case ErrorCode::InvalidPartyCount: return "InvalidPartyCount";
    case ErrorCode::BoundsExceeded: return "BoundsExceeded";
    case ErrorCode::NoSessions: return "NoSessions";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

Error::Error(ErrorCode code, const std::string& message, std::string detail)
    : std::runtime_error(std::string(name(code)) + ": " + message),
      code_(code),
      detail_(std::move(detail)) {}

ParseError::ParseError(int line, const std::string& reason)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason,
            std::to_string(line)),
      line_(line) {}

} // namespace hdqss

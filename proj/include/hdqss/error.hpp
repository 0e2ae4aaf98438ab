#pragma once

#include <stdexcept>
#include <string>

namespace hdqss {

enum class ErrorCode {
    InvalidLength,
    DuplicateAgent,
    UnknownAgent,
    UnknownBoss,
    CannotRevokeRoot,
    LevelMismatch,
    NotAChild,
    NotPrimary,
    NotLocked,
    AlreadyLocked,
    AlreadyDisclosed,
    LengthMismatch,
    EmptyTree,
    EmptyInput,
    MissingParticipant,
    InvalidPermutation,
    InvalidPartyCount,
    BoundsExceeded,
    NoSessions,
    ParseError,
};

const char* name(ErrorCode code);

// Domain error. `detail` carries the offending entity where one exists
// (the missing participant's id, the unknown agent, ...).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::string detail = {});

    ErrorCode code() const noexcept { return code_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

class ParseError : public Error {
public:
    ParseError(int line, const std::string& reason);

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace hdqss

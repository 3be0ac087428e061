#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cnq {

enum class ErrorCode {
    Syntax,
    UndeclaredLine,
    DuplicateLine,
    DuplicateControl,
    NoLines,
    BadK,
    BadPower,
    SelfControl,
    ZeroPower,
    SpecNotTarget,
    UnboundVar,
    TooManyVars,
    TooManyLines,
    UnknownLine,
    TargetInteraction,
    NoCollapse,
    LineMismatch,
};

/// Stable identifier used in diagnostics and structured reports, e.g. "E_BAD_K".
std::string_view code_name(ErrorCode code);

/// Source position inside a `.cnq` text, 1-based. Zero means "unknown".
struct SourceLoc {
    int line = 0;
    int column = 0;
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, SourceLoc loc = {})
        : std::runtime_error(message), code_(code), loc_(loc) {}

    ErrorCode code() const noexcept { return code_; }
    SourceLoc where() const noexcept { return loc_; }

private:
    ErrorCode code_;
    SourceLoc loc_;
};

}  // namespace cnq

#include "cnq/error.hpp"

namespace cnq {

std::string_view code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::Syntax: return "E_SYNTAX";
        case ErrorCode::UndeclaredLine: return "E_UNDECLARED_LINE";
        case ErrorCode::DuplicateLine: return "E_DUPLICATE_LINE";
        case ErrorCode::DuplicateControl: return "E_DUPLICATE_CONTROL";
        case ErrorCode::NoLines: return "E_NO_LINES";
        case ErrorCode::BadK: return "E_BAD_K";
        case ErrorCode::BadPower: return "E_BAD_POWER";
        case ErrorCode::SelfControl: return "E_SELF_CONTROL";
        case ErrorCode::ZeroPower: return "E_ZERO_POWER";
        case ErrorCode::SpecNotTarget: return "E_SPEC_NOT_TARGET";
        case ErrorCode::UnboundVar: return "E_UNBOUND_VAR";
        case ErrorCode::TooManyVars: return "E_TOO_MANY_VARS";
        case ErrorCode::TooManyLines: return "E_TOO_MANY_LINES";
        case ErrorCode::UnknownLine: return "E_UNKNOWN_LINE";
        case ErrorCode::TargetInteraction: return "E_TARGET_INTERACTION";
        case ErrorCode::NoCollapse: return "E_NO_COLLAPSE";
        case ErrorCode::LineMismatch: return "E_LINE_MISMATCH";
    }
    return "E_UNKNOWN";
}

}  // namespace cnq

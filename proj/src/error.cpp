#include "mavrp/error.hpp"

namespace mavrp {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidInstance: return "INVALID_INSTANCE";
    case ErrorCode::InfeasibleSpec: return "INFEASIBLE_SPEC";
    case ErrorCode::ParseError: return "PARSE_ERROR";
    case ErrorCode::ValidationError: return "VALIDATION_ERROR";
    case ErrorCode::DecodeError: return "DECODE_ERROR";
    case ErrorCode::MaskViolation: return "MASK_VIOLATION";
    case ErrorCode::SizeMismatch: return "SIZE_MISMATCH";
    case ErrorCode::ProblemMismatch: return "PROBLEM_MISMATCH";
    case ErrorCode::OracleTooLarge: return "ORACLE_TOO_LARGE";
    case ErrorCode::InputError: return "INPUT_ERROR";
    }
    return "UNKNOWN";
}

namespace {

std::string format_message(ErrorCode code, const std::string& message, int line) {
    std::string out(to_string(code));
    if (line > 0) {
        out += ": line " + std::to_string(line);
    }
    out += ": " + message;
    return out;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message, int line)
    : std::runtime_error(format_message(code, message, line)), code_(code), line_(line) {}

} // namespace mavrp

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mavrp {

enum class ErrorCode {
    InvalidInstance,
    InfeasibleSpec,
    ParseError,
    ValidationError,
    DecodeError,
    MaskViolation,
    SizeMismatch,
    ProblemMismatch,
    OracleTooLarge,
    InputError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-readable code. Parser
// errors also carry the 1-based line number of the offending input line.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, int line = 0);

    ErrorCode code() const noexcept { return code_; }
    int line() const noexcept { return line_; }

private:
    ErrorCode code_;
    int line_;
};

} // namespace mavrp

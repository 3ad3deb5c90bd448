#pragma once

#include <stdexcept>
#include <string>

namespace dspec {

// Error categories; the numeric value doubles as the CLI exit code.
enum class ErrorCode {
    Parse = 2,
    Precision = 3,
    Precondition = 4,
    InternalMismatch = 5,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    ErrorCode code() const { return code_; }
    const char* code_name() const {
        switch (code_) {
        case ErrorCode::Parse: return "PARSE";
        case ErrorCode::Precision: return "PRECISION";
        case ErrorCode::Precondition: return "PRECONDITION";
        case ErrorCode::InternalMismatch: return "INTERNAL_MISMATCH";
        }
        return "UNKNOWN";
    }

private:
    ErrorCode code_;
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(ErrorCode::Parse, msg) {}
};

// Raised when a result would depend on coefficients beyond the known precision.
struct PrecisionError : Error {
    explicit PrecisionError(const std::string& msg) : Error(ErrorCode::Precision, msg) {}
};

struct PreconditionError : Error {
    explicit PreconditionError(const std::string& msg) : Error(ErrorCode::Precondition, msg) {}
};

// Raised when two independently computed views of the same invariant disagree.
struct InternalMismatchError : Error {
    explicit InternalMismatchError(const std::string& msg) : Error(ErrorCode::InternalMismatch, msg) {}
};

} // namespace dspec

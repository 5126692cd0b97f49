#pragma once

#include <stdexcept>
#include <string>

namespace trmt {

// Failure categories shared across the toolkit. The CLI maps NumericalFailure
// (and friends) to exit code 1 with a JSON diagnostic; argv problems exit 2.
enum class ErrorCode {
    InvalidDimension,
    ParityViolation,
    InvalidMove,
    InvalidDegree,
    InvalidGrid,
    InvalidInput,
    BudgetExceeded,
    CalibrationMiss,
    NumericalFailure,
    PreconditionViolation,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(tag(code) + ": " + what), code_(code) {}

    ErrorCode code() const { return code_; }

    static const char* tag(ErrorCode code) {
        switch (code) {
            case ErrorCode::InvalidDimension: return "invalid-dimension";
            case ErrorCode::ParityViolation: return "parity-violation";
            case ErrorCode::InvalidMove: return "invalid-move";
            case ErrorCode::InvalidDegree: return "invalid-degree";
            case ErrorCode::InvalidGrid: return "invalid-grid";
            case ErrorCode::InvalidInput: return "invalid-input";
            case ErrorCode::BudgetExceeded: return "budget-exceeded";
            case ErrorCode::CalibrationMiss: return "calibration-miss";
            case ErrorCode::NumericalFailure: return "numerical-failure";
            case ErrorCode::PreconditionViolation: return "precondition-violation";
        }
        return "error";
    }

  private:
    ErrorCode code_;
};

}  // namespace trmt

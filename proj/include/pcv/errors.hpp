#pragma once

#include <stdexcept>
#include <string>

namespace pcv {

enum class ErrorCode {
    NotAUnit,
    PoleAtX,
    ZeroEigenvalue,
    BadOrder,
    GeneratorOutOfRange,
    BackendMismatch,
    NotAnOrbit,
    ParseError,
    MissingOperatorData,
    OutOfScopeTwisted,
    NotPolynomial,
    PrimeTooLarge,
    NotPrime,
    WorkLimitExceeded,
    ProfileSystemSingular,
    ResidualNonzero,
    NonIntegralFit,
    ValidationFailed,
    TooManyPunctures,
    InvalidSpec,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pcv

#pragma once

#include <stdexcept>
#include <string>

namespace standby {

enum class ErrorCode {
    // parameter validation
    NonPositiveLambda,
    NegativeMu,
    ZeroMu,
    ElementCountTooSmall,
    ElementCountTooLarge,
    NonFiniteInput,
    NegativeS,
    // grids and tolerances
    GridEmpty,
    InvalidGrid,
    EmptyGrid,
    ToleranceOutOfRange,
    TimeNotOnGrid,
    ResolutionTooSmall,
    // samples
    EmptySamples,
    UnsortedSamples,
    TrialsTooSmall,
    MuNotAboveLambda,
    // numerical domain
    DegenerateRoots,
    ElementCountTooLargeForClosedForm,
    // internal consistency
    EventBudgetExceeded,
    InternalConsistency,
};

const char* error_code_name(ErrorCode code);

/// Base class for all library errors. what() is "CodeName: detail".
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& detail)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + detail), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Rejected input; maps to process exit code 2 in the CLI.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Parameters outside a method's numerical domain (e.g. repeated
/// characteristic roots under the closed form); CLI exit code 3.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Violated internal invariant or exhausted safety budget; CLI exit code 4.
class InternalError : public Error {
public:
    using Error::Error;
};

}  // namespace standby

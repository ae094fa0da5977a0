#include "standby/model.hpp"

#include <cmath>
#include <string>

namespace standby {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveLambda: return "NonPositiveLambda";
        case ErrorCode::NegativeMu: return "NegativeMu";
        case ErrorCode::ZeroMu: return "ZeroMu";
        case ErrorCode::ElementCountTooSmall: return "ElementCountTooSmall";
        case ErrorCode::ElementCountTooLarge: return "ElementCountTooLarge";
        case ErrorCode::NonFiniteInput: return "NonFiniteInput";
        case ErrorCode::NegativeS: return "NegativeS";
        case ErrorCode::GridEmpty: return "GridEmpty";
        case ErrorCode::InvalidGrid: return "InvalidGrid";
        case ErrorCode::EmptyGrid: return "EmptyGrid";
        case ErrorCode::ToleranceOutOfRange: return "ToleranceOutOfRange";
        case ErrorCode::TimeNotOnGrid: return "TimeNotOnGrid";
        case ErrorCode::ResolutionTooSmall: return "ResolutionTooSmall";
        case ErrorCode::EmptySamples: return "EmptySamples";
        case ErrorCode::UnsortedSamples: return "UnsortedSamples";
        case ErrorCode::TrialsTooSmall: return "TrialsTooSmall";
        case ErrorCode::MuNotAboveLambda: return "MuNotAboveLambda";
        case ErrorCode::DegenerateRoots: return "DegenerateRoots";
        case ErrorCode::ElementCountTooLargeForClosedForm:
            return "ElementCountTooLargeForClosedForm";
        case ErrorCode::EventBudgetExceeded: return "EventBudgetExceeded";
        case ErrorCode::InternalConsistency: return "InternalConsistency";
    }
    return "UnknownError";
}

SystemParams validate_params(int n, double lambda, double mu, int max_elements) {
    if (!std::isfinite(lambda) || !std::isfinite(mu)) {
        throw ValidationError(ErrorCode::NonFiniteInput,
                              "lambda and mu must be finite");
    }
    if (n < 2) {
        throw ValidationError(ErrorCode::ElementCountTooSmall,
                              "n must be >= 2, got " + std::to_string(n));
    }
    if (n > max_elements) {
        throw ValidationError(ErrorCode::ElementCountTooLarge,
                              "n must be <= " + std::to_string(max_elements) +
                                  ", got " + std::to_string(n));
    }
    if (lambda <= 0.0) {
        throw ValidationError(ErrorCode::NonPositiveLambda,
                              "lambda must be > 0, got " + std::to_string(lambda));
    }
    if (mu < 0.0) {
        throw ValidationError(ErrorCode::NegativeMu,
                              "mu must be >= 0, got " + std::to_string(mu));
    }
    return SystemParams{n, lambda, mu};
}

double GeneratorDescription::up_rate(int j) const {
    if (j < 0 || j >= n) {
        throw ValidationError(ErrorCode::InvalidGrid,
                              "up_rate defined for 0 <= j <= n-1");
    }
    return lambda;
}

double GeneratorDescription::down_rate(int j) const {
    if (j < 1 || j >= n) {
        throw ValidationError(ErrorCode::InvalidGrid,
                              "down_rate defined for 1 <= j <= n-1");
    }
    return mu;
}

double GeneratorDescription::diagonal(int j) const {
    if (j < 0 || j > n) {
        throw ValidationError(ErrorCode::InvalidGrid, "state out of range");
    }
    if (j == n) return 0.0;  // absorbing
    if (j == 0) return -lambda;
    return -(lambda + mu);
}

GeneratorDescription build_generator(const SystemParams& params) {
    return GeneratorDescription{params.n, params.lambda, params.mu};
}

namespace detail {
double pow_int(double x, int k) noexcept {
    double result = 1.0;
    double base = x;
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}
}  // namespace detail

EpsilonScale epsilon_scale(const SystemParams& params) {
    if (params.mu <= 0.0) {
        throw ValidationError(ErrorCode::ZeroMu,
                              "epsilon = lambda/mu requires mu > 0");
    }
    const double eps = params.lambda / params.mu;
    const int exponent = params.n - 1;
    return EpsilonScale{eps, exponent, detail::pow_int(eps, exponent)};
}

}  // namespace standby

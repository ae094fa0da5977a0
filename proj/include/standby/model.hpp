#pragma once

#include <cstdint>

#include "standby/errors.hpp"

namespace standby {

/// Default upper bound on the element count accepted by validate_params.
/// Beyond this the default numerical paths leave well-conditioned double
/// precision; callers that know what they are doing can raise the cap.
inline constexpr int kDefaultMaxElements = 64;

/**
 * @brief Parameter triple of the cold-standby system.
 *
 * n elements (states 0..n count failed elements, state n is absorbing),
 * failure rate lambda for the single working element, repair rate mu for
 * the single repair device. mu == 0 describes a system without repair and
 * is accepted by the transient solver and the simulator; the Laplace
 * formulas require mu > 0.
 */
struct SystemParams {
    int n;
    double lambda;
    double mu;

    double total_rate() const noexcept { return lambda + mu; }
};

/// Validates a candidate triple. Never clamps: out-of-range values raise
/// ValidationError with the offending field named in the message.
SystemParams validate_params(int n, double lambda, double mu,
                             int max_elements = kDefaultMaxElements);

/**
 * @brief Tridiagonal transition-rate structure of the absorbing chain.
 *
 * up_rate(j) is the rate of j -> j+1 (a failure), defined for 0 <= j <= n-1;
 * down_rate(j) is the rate of j -> j-1 (a completed repair), defined for
 * 1 <= j <= n-1. State n has no outgoing rate.
 */
struct GeneratorDescription {
    int n;
    double lambda;
    double mu;

    double up_rate(int j) const;
    double down_rate(int j) const;
    /// -(sum of outgoing rates) for state j, 0 for the absorbing state.
    double diagonal(int j) const;
};

GeneratorDescription build_generator(const SystemParams& params);

/// The reliability small parameter eps = lambda/mu and its (n-1)-th power,
/// the normalization applied to the lifetime in the limit theorem.
struct EpsilonScale {
    double epsilon;
    int exponent;
    double scale;
};

EpsilonScale epsilon_scale(const SystemParams& params);

namespace detail {
/// x^k by binary exponentiation; k >= 0.
double pow_int(double x, int k) noexcept;
}  // namespace detail

}  // namespace standby

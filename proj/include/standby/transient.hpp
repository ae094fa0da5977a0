#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "standby/model.hpp"

namespace standby {

/// Strictly increasing, finite evaluation times, all >= 0.
struct TimeGrid {
    std::vector<double> points;

    static TimeGrid make(std::vector<double> pts);
    std::size_t size() const noexcept { return points.size(); }
};

/**
 * @brief State probabilities P_j(t), lifetime CDF and density on a grid.
 *
 * probs is row-major: probs[i*n + j] = P_j(t_i) = P(q(t_i) = j, tau > t_i).
 * absorbed[i] = F(t_i) = 1 - sum_j P_j(t_i); density[i] = lambda*P_{n-1}(t_i).
 */
struct TransientSolution {
    TimeGrid grid;
    int n = 0;
    std::vector<double> probs;
    std::vector<double> absorbed;
    std::vector<double> density;

    double prob(std::size_t point, int state) const {
        return probs[point * static_cast<std::size_t>(n) + state];
    }
    double survival(std::size_t point) const;
};

/// Default solver tolerance; must lie in (0, 1e-6].
inline constexpr double kDefaultSolveTol = 1e-10;

/**
 * @brief Solves the Kolmogorov system for P_j(t) over the grid.
 *
 * Uniformization: with Lambda = lambda + mu the transient block satisfies
 * exp(A t) = sum_k Poisson(Lambda t)_k M^k for the substochastic jump
 * kernel M = I + A/Lambda, and the Poisson tail bounds the truncation
 * error. Grid points are reached by stepping t_i -> t_{i+1}; long steps
 * compose a uniformized base matrix dyadically so the term count stays
 * bounded for horizons up to Lambda*t ~ 7e10. All iterates are
 * nonnegative, so no cancellation occurs anywhere. The per-call truncation
 * budget is tol, split evenly across steps.
 */
TransientSolution solve_transient(const SystemParams& params, const TimeGrid& grid,
                                  double tol = kDefaultSolveTol);

/// F(t) for a t that lies on the solution's grid (within 1e-9 relative).
double lifetime_cdf(const TransientSolution& solution, double t);

/**
 * @brief Expected lifetime E tau from state 0, by the first-passage
 *        linear system m = sojourn + jump-probabilities * m.
 *
 * The elimination pivots of this tridiagonal system are identically
 * lambda ((lambda+mu) - lambda*mu/lambda = lambda), so the solve reduces
 * to subtraction-free recurrences and is componentwise accurate for any
 * lambda/mu ratio. mu = 0 gives the Erlang mean n/lambda.
 */
double mean_lifetime(const SystemParams& params);

/// Smallest power-of-two multiple of E tau whose survival probability is
/// below threshold; the doubling starts at E tau itself.
double survival_horizon(const SystemParams& params, double threshold);

/// Uniform grid of `resolution` points on [0, T] with T chosen by doubling
/// until survival(T) < 1e-6.
TimeGrid default_grid(const SystemParams& params, int resolution);

/// F evaluated at arbitrary nondecreasing nonnegative times (duplicates
/// allowed); convenience wrapper over solve_transient for CDF lookups at
/// sample points.
std::vector<double> cdf_at_sorted_times(const SystemParams& params,
                                        std::span<const double> times,
                                        double tol = kDefaultSolveTol);

}  // namespace standby

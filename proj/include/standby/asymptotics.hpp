#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "standby/model.hpp"

namespace standby {

/// Per-mu convergence metrics of the normalized lifetime
/// (lambda/mu)^{n-1} * tau against the Exp(lambda) limit.
struct ConvergenceEntry {
    double mu;
    double epsilon;
    double scale;
    double lst_sup_error;
    double ks_analytic;
    double ks_montecarlo;
};

struct ConvergenceReport {
    int n = 0;
    double lambda = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<double> s_grid;
    std::vector<double> t_grid;
    std::vector<ConvergenceEntry> entries;
};

/// P((lambda/mu)^{n-1} tau <= t), i.e. F(t / scale) through the transient
/// solver. Requires mu > 0 and t >= 0.
double normalized_cdf_analytic(const SystemParams& params, double t);

/// Batched variant over a nondecreasing normalized time grid.
std::vector<double> normalized_cdf_curve(const SystemParams& params,
                                         std::span<const double> t_normalized);

/// max over the s grid of |lambda*phi_{n-1}(scale*s) - lambda/(lambda+s)|,
/// tridiagonal path. All s must be > 0.
double lst_limit_error(const SystemParams& params, std::span<const double> s_grid);

/// One-sample Kolmogorov-Smirnov statistic of sorted positive samples
/// against Exp(lambda): sup_i max(|i/N - F(x_i)|, |(i-1)/N - F(x_i)|).
double ks_vs_exponential(std::span<const double> sorted_samples, double lambda);

/// Same statistic against an arbitrary CDF supplied as its values at the
/// sorted sample points.
double ks_empirical_vs_cdf(std::span<const double> sorted_samples,
                           std::span<const double> cdf_at_samples);

/// {0.1, 0.2, 0.5, 1, 2, 5, 10} * lambda.
std::vector<double> default_s_grid(double lambda);

/// 400 uniform points on [0, 8/lambda].
std::vector<double> default_t_grid(double lambda);

/**
 * @brief Sweeps mu over an ascending list and reports, per mu, the
 *        transform sup-error and both KS distances (analytic CDF vs the
 *        Exp(lambda) limit; aggregated Monte Carlo vs the limit).
 *
 * Every mu must exceed lambda so that epsilon < 1. The Monte Carlo column
 * uses sample_lifetimes_aggregated, which stays O(trials) even at
 * mu/lambda where event-driven simulation would take ~(mu/lambda)^{n-1}*mu
 * events per trial.
 */
ConvergenceReport convergence_sweep(int n, double lambda,
                                    std::span<const double> mu_values,
                                    std::uint64_t trials, std::uint64_t seed,
                                    std::span<const double> s_grid = {});

}  // namespace standby

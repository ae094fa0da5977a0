#pragma once

#include <cstdint>
#include <vector>

#include "standby/model.hpp"
#include "standby/rng.hpp"

namespace standby {

struct SimulationConfig {
    SystemParams params;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
};

/**
 * @brief Reproducible lifetime samples.
 *
 * samples[i] is the lifetime of trial i, generated from the counter stream
 * (seed, i); the vector is bitwise identical for a given (params, trials,
 * seed) regardless of thread count. sorted is false in trial order and true
 * after sorted_result.
 */
struct SimulationResult {
    std::vector<double> samples;
    std::uint64_t seed = 0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;
    bool sorted = false;
};

/// Per-trial cap on jump events; hitting it indicates either a bug or a
/// parameter regime (huge mu/lambda) that calls for the aggregated sampler.
inline constexpr std::uint64_t kEventBudget = 1000000000ULL;

/**
 * @brief One lifetime by event-driven simulation.
 *
 * From state 0: wait Exp(lambda), move to 1. From 0 < j < n: wait
 * Exp(lambda+mu), then one uniform decides the branch: up if
 * u < lambda/(lambda+mu), down otherwise. Exactly one wait draw plus (for
 * j > 0) one branch draw per event, in that order, so the sample is a fixed
 * function of the stream contents.
 */
double simulate_one(const SystemParams& params, CounterStream& stream,
                    std::uint64_t max_events = kEventBudget);

/// Runs config.trials independent trials; trial i always consumes stream
/// (seed, i). Threads only partition the work.
SimulationResult run_trials(const SimulationConfig& config, int threads = 1);

/// Ascending copy of the samples (sorted flag set).
SimulationResult sorted_result(const SimulationResult& result);

/// Fraction of samples <= t (right-continuous empirical CDF).
double empirical_cdf(const SimulationResult& result, double t);

/**
 * @brief Exact-in-distribution lifetime sampler for highly reliable
 *        regimes.
 *
 * Conditional on the jump chain, tau is Erlang(V0, lambda) + Erlang(V+,
 * lambda+mu) where V0 counts sojourns in state 0 and V+ sojourns in states
 * 1..n-1. The level-passage structure makes the visit counts a chain of
 * negative binomials: passing level j needs Geometric(lambda/(lambda+mu))
 * tries per required passage and each failure demands one more passage of
 * level j-1. Sampling the counts (geometric sums for small counts, the
 * gamma-Poisson mixture for large) and then two gamma variates costs O(n)
 * draws per trial where the event loop would need ~(mu/lambda)^{n-1} * mu
 * events. Uses counter streams (seed, trial | 2^63); not bitwise
 * comparable with run_trials, only in distribution.
 */
std::vector<double> sample_lifetimes_aggregated(const SystemParams& params,
                                                std::uint64_t trials,
                                                std::uint64_t seed);

}  // namespace standby

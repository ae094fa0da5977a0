#include "standby/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace standby {

double simulate_one(const SystemParams& params, CounterStream& stream,
                    std::uint64_t max_events) {
    const int n = params.n;
    const double lambda = params.lambda;
    const double total = params.total_rate();
    const double p_up = lambda / total;

    double t = 0.0;
    int state = 0;
    std::uint64_t events = 0;
    for (;;) {
        if (++events > max_events) {
            throw InternalError(ErrorCode::EventBudgetExceeded,
                                "trial exceeded " + std::to_string(max_events) +
                                    " events; for large mu/lambda use the "
                                    "aggregated sampler");
        }
        if (state == 0) {
            t += stream.next_exponential(lambda);
            state = 1;
            if (n == 1) return t;  // unreachable for validated params
        } else {
            t += stream.next_exponential(total);
            if (stream.next_open01() < p_up) {
                if (++state == n) return t;
            } else {
                --state;
            }
        }
    }
}

SimulationResult run_trials(const SimulationConfig& config, int threads) {
    if (config.trials < 1) {
        throw ValidationError(ErrorCode::TrialsTooSmall, "trials must be >= 1");
    }
    const std::uint64_t trials = config.trials;
    SimulationResult result;
    result.seed = config.seed;
    result.samples.resize(trials);

    const int worker_count =
        static_cast<int>(std::min<std::uint64_t>(std::max(threads, 1), trials));
    auto worker = [&](std::uint64_t begin, std::uint64_t end) {
        for (std::uint64_t i = begin; i < end; ++i) {
            CounterStream stream(config.seed, i);
            result.samples[i] = simulate_one(config.params, stream);
        }
    };
    if (worker_count <= 1) {
        worker(0, trials);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> failures(worker_count);
        const std::uint64_t chunk = (trials + worker_count - 1) / worker_count;
        for (int w = 0; w < worker_count; ++w) {
            const std::uint64_t begin = chunk * static_cast<std::uint64_t>(w);
            const std::uint64_t end = std::min(trials, begin + chunk);
            pool.emplace_back([&, w, begin, end] {
                try {
                    worker(begin, end);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& f : failures) {
            if (f) std::rethrow_exception(f);
        }
    }

    // Fixed summation order by trial index, independent of threading.
    double mean = 0.0;
    for (const double x : result.samples) mean += x;
    mean /= static_cast<double>(trials);
    double ssq = 0.0;
    for (const double x : result.samples) ssq += (x - mean) * (x - mean);
    result.sample_mean = mean;
    result.sample_variance =
        trials > 1 ? ssq / static_cast<double>(trials - 1) : 0.0;
    result.sorted = false;
    return result;
}

SimulationResult sorted_result(const SimulationResult& result) {
    SimulationResult out = result;
    std::sort(out.samples.begin(), out.samples.end());
    out.sorted = true;
    return out;
}

double empirical_cdf(const SimulationResult& result, double t) {
    if (result.samples.empty()) {
        throw ValidationError(ErrorCode::EmptySamples, "no samples");
    }
    std::size_t count;
    if (result.sorted) {
        count = static_cast<std::size_t>(
            std::upper_bound(result.samples.begin(), result.samples.end(), t) -
            result.samples.begin());
    } else {
        count = static_cast<std::size_t>(
            std::count_if(result.samples.begin(), result.samples.end(),
                          [t](double x) { return x <= t; }));
    }
    return static_cast<double>(count) / static_cast<double>(result.samples.size());
}

namespace {

constexpr std::uint64_t kAggregatedStreamTag = 1ULL << 63;

// Total Bernoulli(p) trials needed for `successes` successes. Geometric
// sums below the crossover, the exact gamma-Poisson negative-binomial
// mixture above it.
double negative_binomial_trials(double successes, double p, CounterStream& stream) {
    if (successes <= 256.0) {
        double total = 0.0;
        for (double r = 0.0; r < successes; r += 1.0) {
            total += stream.next_geometric(p);
        }
        return total;
    }
    const double mix_mean = stream.next_gamma(successes, p / (1.0 - p));
    return successes + stream.next_poisson(mix_mean);
}

double sample_one_aggregated(const SystemParams& params, CounterStream& stream) {
    if (params.mu == 0.0) {
        return stream.next_gamma(static_cast<double>(params.n), params.lambda);
    }
    const double p_up = params.lambda / params.total_rate();
    double required = 1.0;     // passages of the current level still owed
    double busy_visits = 0.0;  // sojourns in states 1..n-1
    for (int level = params.n - 1; level >= 1; --level) {
        const double tries = negative_binomial_trials(required, p_up, stream);
        busy_visits += tries;
        required = 1.0 + (tries - required);  // 1 + failures at this level
    }
    const double idle_visits = required;  // sojourns in state 0
    return stream.next_gamma(idle_visits, params.lambda) +
           stream.next_gamma(busy_visits, params.total_rate());
}

}  // namespace

std::vector<double> sample_lifetimes_aggregated(const SystemParams& params,
                                                std::uint64_t trials,
                                                std::uint64_t seed) {
    if (trials < 1) {
        throw ValidationError(ErrorCode::TrialsTooSmall, "trials must be >= 1");
    }
    std::vector<double> samples(trials);
    for (std::uint64_t i = 0; i < trials; ++i) {
        CounterStream stream(seed, i | kAggregatedStreamTag);
        samples[i] = sample_one_aggregated(params, stream);
    }
    return samples;
}

}  // namespace standby

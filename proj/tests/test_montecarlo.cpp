#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "standby/asymptotics.hpp"
#include "standby/montecarlo.hpp"
#include "standby/transient.hpp"

using namespace standby;

TEST_SUITE_BEGIN("montecarlo");

TEST_CASE("identical configs give bitwise-identical results") {
    const SystemParams p = validate_params(3, 1.0, 5.0);
    const SimulationConfig config{p, 20000, 99};
    const SimulationResult a = run_trials(config, 1);
    const SimulationResult b = run_trials(config, 1);
    const SimulationResult c = run_trials(config, 3);
    CHECK(a.samples == b.samples);
    CHECK(a.samples == c.samples);
    CHECK(a.sample_mean == c.sample_mean);
    CHECK(a.sample_variance == c.sample_variance);
}

TEST_CASE("single trial and trial-count validation") {
    const SystemParams p = validate_params(2, 1.0, 1.0);
    const SimulationResult r = run_trials({p, 1, 7});
    CHECK(r.samples.size() == 1);
    CHECK(r.samples[0] > 0.0);
    CHECK(r.sample_variance == 0.0);
    CHECK_THROWS_AS(run_trials({p, 0, 7}), ValidationError);
}

TEST_CASE("samples are positive and finite") {
    const SystemParams p = validate_params(4, 2.0, 6.0);
    const SimulationResult r = run_trials({p, 5000, 11}, 2);
    for (const double x : r.samples) {
        CHECK(x > 0.0);
        CHECK(std::isfinite(x));
    }
}

TEST_CASE("event budget guard") {
    const SystemParams p = validate_params(2, 1.0, 50.0);
    CounterStream stream(123, 0);
    CHECK_THROWS_AS(simulate_one(p, stream, 10), InternalError);
}

TEST_CASE("mu = 0 sample mean approaches n/lambda") {
    const SystemParams p = validate_params(3, 2.0, 0.0);
    const SimulationResult r = run_trials({p, 100000, 21}, 2);
    const double mean = 3.0 / 2.0;
    const double se = std::sqrt(r.sample_variance / 100000.0);
    CHECK(std::abs(r.sample_mean - mean) <= 3.0 * se);
}

TEST_CASE("sample mean matches the first-passage mean within 3 SE") {
    const SystemParams p = validate_params(3, 1.0, 10.0);
    const SimulationResult r = run_trials({p, 100000, 31}, 2);
    const double se = std::sqrt(r.sample_variance / 100000.0);
    CHECK(std::abs(r.sample_mean - mean_lifetime(p)) <= 3.0 * se);
}

TEST_CASE("empirical cdf step semantics") {
    SimulationResult r;
    r.samples = {3.0, 1.0, 2.0, 5.0, 4.0};  // trial order, unsorted
    r.sorted = false;
    CHECK(empirical_cdf(r, 0.5) == 0.0);
    CHECK(empirical_cdf(r, 5.0) == 1.0);
    CHECK(empirical_cdf(r, 99.0) == 1.0);
    CHECK(empirical_cdf(r, 3.0) == doctest::Approx(3.0 / 5.0));  // (N+1)/(2N) at the median
    const SimulationResult s = sorted_result(r);
    CHECK(s.sorted);
    CHECK(std::is_sorted(s.samples.begin(), s.samples.end()));
    CHECK(empirical_cdf(s, 3.0) == empirical_cdf(r, 3.0));
    SimulationResult empty;
    CHECK_THROWS_AS(empirical_cdf(empty, 1.0), ValidationError);
}

TEST_CASE("empirical cdf against the analytic solver at 1e5 trials") {
    const SystemParams p = validate_params(2, 1.0, 10.0);
    const SimulationResult sorted = sorted_result(run_trials({p, 100000, 42}, 2));
    const std::vector<double> cdf = cdf_at_sorted_times(p, sorted.samples);
    const double ks = ks_empirical_vs_cdf(sorted.samples, cdf);
    CHECK(ks < 1.36 / std::sqrt(100000.0));
}

TEST_CASE("aggregated sampler matches the event loop in distribution") {
    const SystemParams p = validate_params(3, 1.0, 5.0);
    const std::size_t count = 20000;
    std::vector<double> a = sample_lifetimes_aggregated(p, count, 11);
    std::vector<double> b = run_trials({p, count, 4242}, 2).samples;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    CHECK(d < 1.36 * std::sqrt(2.0 / static_cast<double>(count)));
}

TEST_CASE("aggregated sampler is deterministic and Erlang for mu = 0") {
    const SystemParams p = validate_params(4, 2.0, 0.0);
    const std::vector<double> a = sample_lifetimes_aggregated(p, 50000, 5);
    const std::vector<double> b = sample_lifetimes_aggregated(p, 50000, 5);
    CHECK(a == b);
    const double mean = std::accumulate(a.begin(), a.end(), 0.0) / a.size();
    const double target = 4.0 / 2.0;
    CHECK(std::abs(mean - target) < 0.02);
}

TEST_SUITE_END();

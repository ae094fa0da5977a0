#include "standby/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "standby/laplace.hpp"
#include "standby/montecarlo.hpp"
#include "standby/transient.hpp"

namespace standby {

double normalized_cdf_analytic(const SystemParams& params, double t) {
    if (t < 0.0 || !std::isfinite(t)) {
        throw ValidationError(ErrorCode::InvalidGrid, "t must be finite and >= 0");
    }
    if (t == 0.0) return 0.0;
    const double scale = epsilon_scale(params).scale;  // raises ZeroMu if mu == 0
    const TransientSolution sol =
        solve_transient(params, TimeGrid{{t / scale}}, kDefaultSolveTol);
    return sol.absorbed[0];
}

std::vector<double> normalized_cdf_curve(const SystemParams& params,
                                         std::span<const double> t_normalized) {
    const double scale = epsilon_scale(params).scale;
    std::vector<double> unnormalized(t_normalized.size());
    for (std::size_t i = 0; i < t_normalized.size(); ++i) {
        unnormalized[i] = t_normalized[i] / scale;
    }
    return cdf_at_sorted_times(params, unnormalized);
}

double lst_limit_error(const SystemParams& params, std::span<const double> s_grid) {
    if (s_grid.empty()) {
        throw ValidationError(ErrorCode::EmptyGrid, "s grid is empty");
    }
    const double scale = epsilon_scale(params).scale;
    double sup = 0.0;
    for (const double s : s_grid) {
        if (!(s > 0.0) || !std::isfinite(s)) {
            throw ValidationError(ErrorCode::NegativeS,
                                  "s grid values must be finite and > 0");
        }
        const double transform = lst_tau(params, scale * s);
        const double limit = params.lambda / (params.lambda + s);
        sup = std::max(sup, std::abs(transform - limit));
    }
    return sup;
}

namespace {

void require_sorted_positive(std::span<const double> samples) {
    if (samples.empty()) {
        throw ValidationError(ErrorCode::EmptySamples, "no samples");
    }
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0 && samples[i] < samples[i - 1]) {
            throw ValidationError(ErrorCode::UnsortedSamples,
                                  "samples must be sorted ascending");
        }
    }
}

}  // namespace

double ks_empirical_vs_cdf(std::span<const double> sorted_samples,
                           std::span<const double> cdf_at_samples) {
    require_sorted_positive(sorted_samples);
    if (cdf_at_samples.size() != sorted_samples.size()) {
        throw ValidationError(ErrorCode::InvalidGrid,
                              "cdf values must match the sample count");
    }
    const double count = static_cast<double>(sorted_samples.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        const double f = cdf_at_samples[i];
        const double hi = static_cast<double>(i + 1) / count;
        const double lo = static_cast<double>(i) / count;
        sup = std::max({sup, std::abs(hi - f), std::abs(lo - f)});
    }
    return sup;
}

double ks_vs_exponential(std::span<const double> sorted_samples, double lambda) {
    require_sorted_positive(sorted_samples);
    std::vector<double> cdf(sorted_samples.size());
    for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
        cdf[i] = -std::expm1(-lambda * sorted_samples[i]);
    }
    return ks_empirical_vs_cdf(sorted_samples, cdf);
}

std::vector<double> default_s_grid(double lambda) {
    std::vector<double> grid{0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0};
    for (double& s : grid) s *= lambda;
    return grid;
}

std::vector<double> default_t_grid(double lambda) {
    constexpr int kPoints = 400;
    std::vector<double> grid(kPoints);
    const double t_max = 8.0 / lambda;
    for (int i = 0; i < kPoints; ++i) {
        grid[static_cast<std::size_t>(i)] =
            t_max * static_cast<double>(i) / static_cast<double>(kPoints - 1);
    }
    return grid;
}

ConvergenceReport convergence_sweep(int n, double lambda,
                                    std::span<const double> mu_values,
                                    std::uint64_t trials, std::uint64_t seed,
                                    std::span<const double> s_grid) {
    if (mu_values.empty()) {
        throw ValidationError(ErrorCode::EmptyGrid, "mu list is empty");
    }
    for (std::size_t i = 0; i < mu_values.size(); ++i) {
        if (!(mu_values[i] > lambda)) {
            throw ValidationError(
                ErrorCode::MuNotAboveLambda,
                "every mu must exceed lambda (epsilon < 1); offending mu = " +
                    std::to_string(mu_values[i]));
        }
        if (i > 0 && mu_values[i] <= mu_values[i - 1]) {
            throw ValidationError(ErrorCode::InvalidGrid,
                                  "mu values must be strictly increasing");
        }
    }

    ConvergenceReport report;
    report.n = n;
    report.lambda = lambda;
    report.trials = trials;
    report.seed = seed;
    report.s_grid = s_grid.empty()
                        ? default_s_grid(lambda)
                        : std::vector<double>(s_grid.begin(), s_grid.end());
    report.t_grid = default_t_grid(lambda);

    for (const double mu : mu_values) {
        const SystemParams params = validate_params(n, lambda, mu);
        const EpsilonScale eps = epsilon_scale(params);

        ConvergenceEntry entry;
        entry.mu = mu;
        entry.epsilon = eps.epsilon;
        entry.scale = eps.scale;
        entry.lst_sup_error = lst_limit_error(params, report.s_grid);

        const std::vector<double> analytic = normalized_cdf_curve(params, report.t_grid);
        double sup = 0.0;
        for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
            const double limit = -std::expm1(-lambda * report.t_grid[i]);
            sup = std::max(sup, std::abs(analytic[i] - limit));
        }
        entry.ks_analytic = sup;

        std::vector<double> samples = sample_lifetimes_aggregated(params, trials, seed);
        for (double& x : samples) x *= eps.scale;
        std::sort(samples.begin(), samples.end());
        entry.ks_montecarlo = ks_vs_exponential(samples, lambda);

        report.entries.push_back(entry);
    }
    return report;
}

}  // namespace standby

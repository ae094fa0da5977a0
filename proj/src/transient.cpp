#include "standby/transient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace standby {

namespace {

constexpr double kClampSlack = 1e-12;
// Largest Poisson mean handled by a single truncated sum. Larger bases
// mean fewer dyadic squarings, whose round-off amplifies by 2 per level.
constexpr double kThetaMax = 4096.0;
// Direct vector summation limit; larger steps go through a step matrix.
constexpr double kVectorDirectLimit = 400.0;
constexpr int kMaxSquarings = 26;

// Substochastic jump kernel M = I + A/Lambda restricted to the transient
// states, with Lambda = lambda + mu. Tridiagonal with constant entries.
struct JumpKernel {
    int n;
    double up;     // M[j][j+1], j < n-1, and the absorption leak from n-1
    double down;   // M[j][j-1], j >= 1
    double stay0;  // M[0][0] = 1 - lambda/Lambda
    double stay;   // M[j][j] = 0 for Lambda = lambda + mu
};

JumpKernel make_kernel(const SystemParams& params) {
    const double big_lambda = params.total_rate();
    return JumpKernel{params.n, params.lambda / big_lambda, params.mu / big_lambda,
                      params.mu / big_lambda, 0.0};
}

// y = x * M (row vector times kernel).
void apply_kernel(const JumpKernel& k, const double* x, double* y) {
    const int n = k.n;
    if (n == 1) {
        y[0] = x[0] * k.stay0;
        return;
    }
    y[0] = x[0] * k.stay0 + x[1] * k.down;
    for (int j = 1; j < n - 1; ++j) {
        y[j] = x[j - 1] * k.up + x[j] * k.stay + x[j + 1] * k.down;
    }
    y[n - 1] = x[n - 2] * k.up + x[n - 1] * k.stay;
}

// B = B * M, all rows at once.
void apply_kernel_rows(const JumpKernel& k, const std::vector<double>& b,
                       std::vector<double>& out) {
    const int n = k.n;
    for (int i = 0; i < n; ++i) {
        apply_kernel(k, b.data() + static_cast<std::size_t>(i) * n,
                     out.data() + static_cast<std::size_t>(i) * n);
    }
}

std::vector<double> dense_square(const std::vector<double>& b, int n) {
    std::vector<double> c(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int l = 0; l < n; ++l) {
            const double bil = b[static_cast<std::size_t>(i) * n + l];
            if (bil == 0.0) continue;
            const double* row = b.data() + static_cast<std::size_t>(l) * n;
            double* out = c.data() + static_cast<std::size_t>(i) * n;
            for (int j = 0; j < n; ++j) out[j] += bil * row[j];
        }
    }
    return c;
}

struct PoissonWindow {
    long k_lo;
    std::vector<double> weights;  // weights[k - k_lo]
};

// Weights of a Poisson(x) window capturing all but at most eps of the mass.
// Truncated mass is simply dropped, so the computed mixture is a lower
// bound within eps of the exact one.
PoissonWindow poisson_window(double x, double eps) {
    eps = std::clamp(eps, 1e-60, 0.1);
    PoissonWindow win;
    if (x <= 30.0) {
        win.k_lo = 0;
        double w = std::exp(-x);
        double cum = w;
        win.weights.push_back(w);
        long k = 0;
        while (cum < 1.0 - eps && k < 4000) {
            ++k;
            w *= x / static_cast<double>(k);
            win.weights.push_back(w);
            cum += w;
        }
        return win;
    }
    const long mode = static_cast<long>(std::floor(x));
    const double w_mode = std::exp(-x + static_cast<double>(mode) * std::log(x) -
                                   std::lgamma(static_cast<double>(mode) + 1.0));
    // Geometric-ratio tail bounds: P(K <= k) <= w_k * x/(x-k) for k < x and
    // P(K >= k) <= w_k * (k+1)/(k+1-x) for k+1 > x.
    long lo = mode;
    {
        double w = w_mode;
        while (lo > 0) {
            if (static_cast<double>(lo) < x &&
                w * x / (x - static_cast<double>(lo)) < 0.5 * eps) {
                break;
            }
            w *= static_cast<double>(lo) / x;
            --lo;
        }
    }
    long hi = mode;
    {
        double w = w_mode;
        for (;;) {
            const double w_next = w * x / static_cast<double>(hi + 1);
            const double cut = static_cast<double>(hi + 2);
            if (cut > x && w_next * cut / (cut - x) < 0.5 * eps) break;
            ++hi;
            w = w_next;
            if (hi - mode > 1000000) {
                throw InternalError(ErrorCode::InternalConsistency,
                                    "poisson window failed to close");
            }
        }
    }
    win.k_lo = lo;
    win.weights.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
    win.weights[static_cast<std::size_t>(mode - lo)] = w_mode;
    double w = w_mode;
    for (long k = mode; k > lo; --k) {
        w *= static_cast<double>(k) / x;
        win.weights[static_cast<std::size_t>(k - 1 - lo)] = w;
    }
    w = w_mode;
    for (long k = mode + 1; k <= hi; ++k) {
        w *= x / static_cast<double>(k);
        win.weights[static_cast<std::size_t>(k - lo)] = w;
    }
    return win;
}

// exp(A*delta) on the transient block as a dense matrix: a truncated
// Poisson mixture at mean theta <= kThetaMax, squared dyadically up to the
// requested step.
std::vector<double> step_matrix(const SystemParams& params, const JumpKernel& kernel,
                                double delta, double eps) {
    const int n = params.n;
    const double x = params.total_rate() * delta;
    int squarings = 0;
    double theta = x;
    if (theta > kThetaMax) {
        squarings = static_cast<int>(std::ceil(std::log2(x / kThetaMax)));
        if (squarings > kMaxSquarings) {
            throw InternalError(
                ErrorCode::InternalConsistency,
                "time horizon too large: Lambda*t = " + std::to_string(x) +
                    " exceeds the double-precision stepping range");
        }
        theta = std::ldexp(x, -squarings);
    }
    // The truncation error doubles per squaring.
    const double eps_base = eps / std::ldexp(1.0, squarings + 1);
    const PoissonWindow win = poisson_window(theta, eps_base);

    std::vector<double> acc(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> power(static_cast<std::size_t>(n) * n, 0.0);
    std::vector<double> scratch(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) power[static_cast<std::size_t>(i) * n + i] = 1.0;

    const long k_hi = win.k_lo + static_cast<long>(win.weights.size()) - 1;
    for (long k = 0; k <= k_hi; ++k) {
        if (k >= win.k_lo) {
            const double w = win.weights[static_cast<std::size_t>(k - win.k_lo)];
            for (std::size_t idx = 0; idx < acc.size(); ++idx) acc[idx] += w * power[idx];
        }
        if (k < k_hi) {
            apply_kernel_rows(kernel, power, scratch);
            power.swap(scratch);
        }
    }
    for (int i = 0; i < squarings; ++i) acc = dense_square(acc, n);
    return acc;
}

}  // namespace

TimeGrid TimeGrid::make(std::vector<double> pts) {
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!std::isfinite(pts[i])) {
            throw ValidationError(ErrorCode::InvalidGrid, "grid points must be finite");
        }
        if (i == 0 && pts[i] < 0.0) {
            throw ValidationError(ErrorCode::InvalidGrid, "grid must start at t >= 0");
        }
        if (i > 0 && pts[i] <= pts[i - 1]) {
            throw ValidationError(ErrorCode::InvalidGrid,
                                  "grid points must be strictly increasing");
        }
    }
    return TimeGrid{std::move(pts)};
}

double TransientSolution::survival(std::size_t point) const {
    const double* row = probs.data() + point * static_cast<std::size_t>(n);
    double total = 0.0;
    for (int j = 0; j < n; ++j) total += row[j];
    return total;
}

TransientSolution solve_transient(const SystemParams& params, const TimeGrid& grid,
                                  double tol) {
    if (grid.points.empty()) {
        throw ValidationError(ErrorCode::GridEmpty, "time grid has no points");
    }
    if (!(tol > 0.0) || tol > 1e-6) {
        throw ValidationError(ErrorCode::ToleranceOutOfRange,
                              "tol must lie in (0, 1e-6]");
    }
    const int n = params.n;
    const std::size_t npts = grid.points.size();
    const JumpKernel kernel = make_kernel(params);
    const double eps_step = tol / (2.0 * static_cast<double>(npts));

    TransientSolution sol;
    sol.grid = grid;
    sol.n = n;
    sol.probs.resize(npts * static_cast<std::size_t>(n));
    sol.absorbed.resize(npts);
    sol.density.resize(npts);

    std::vector<double> p(n, 0.0), scratch(n, 0.0), acc(n, 0.0);
    p[0] = 1.0;
    double t_prev = 0.0;
    double f_prev = 0.0;

    // One-entry step-matrix cache; uniform grids reuse it for every step.
    double cached_delta = -1.0;
    std::vector<double> cached_matrix;

    for (std::size_t i = 0; i < npts; ++i) {
        const double delta = grid.points[i] - t_prev;
        t_prev = grid.points[i];
        if (delta > 0.0) {
            const double x = params.total_rate() * delta;
            if (x <= kVectorDirectLimit) {
                const PoissonWindow win = poisson_window(x, eps_step);
                std::fill(acc.begin(), acc.end(), 0.0);
                const long k_hi = win.k_lo + static_cast<long>(win.weights.size()) - 1;
                for (long k = 0; k <= k_hi; ++k) {
                    if (k >= win.k_lo) {
                        const double w =
                            win.weights[static_cast<std::size_t>(k - win.k_lo)];
                        for (int j = 0; j < n; ++j) acc[j] += w * p[j];
                    }
                    if (k < k_hi) {
                        apply_kernel(kernel, p.data(), scratch.data());
                        p.swap(scratch);
                    }
                }
                p = acc;
            } else {
                if (delta != cached_delta) {
                    cached_matrix = step_matrix(params, kernel, delta, eps_step);
                    cached_delta = delta;
                }
                for (int j = 0; j < n; ++j) {
                    double v = 0.0;
                    for (int l = 0; l < n; ++l) {
                        v += p[l] * cached_matrix[static_cast<std::size_t>(l) * n + j];
                    }
                    scratch[j] = v;
                }
                p.swap(scratch);
            }
        }

        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            double v = p[j];
            if (v < -kClampSlack || v > 1.0 + kClampSlack) {
                throw InternalError(ErrorCode::InternalConsistency,
                                    "state probability " + std::to_string(v) +
                                        " outside [0,1] beyond round-off");
            }
            v = std::clamp(v, 0.0, 1.0);
            sol.probs[i * static_cast<std::size_t>(n) + j] = v;
            total += v;
        }
        double f = 1.0 - total;
        if (f < f_prev - kClampSlack) {
            throw InternalError(ErrorCode::InternalConsistency,
                                "absorption probability decreased along the grid");
        }
        f = std::clamp(std::max(f, f_prev), 0.0, 1.0);
        f_prev = f;
        sol.absorbed[i] = f;
        sol.density[i] = params.lambda * sol.probs[i * static_cast<std::size_t>(n) + n - 1];
    }
    return sol;
}

double lifetime_cdf(const TransientSolution& solution, double t) {
    const auto& pts = solution.grid.points;
    const auto it = std::lower_bound(pts.begin(), pts.end(), t);
    const auto matches = [&](std::size_t idx) {
        return idx < pts.size() &&
               std::abs(pts[idx] - t) <= 1e-9 * std::max(1.0, std::abs(t));
    };
    std::size_t idx = static_cast<std::size_t>(it - pts.begin());
    if (matches(idx)) return solution.absorbed[idx];
    if (idx > 0 && matches(idx - 1)) return solution.absorbed[idx - 1];
    throw ValidationError(ErrorCode::TimeNotOnGrid,
                          "t = " + std::to_string(t) + " is not a grid point");
}

double mean_lifetime(const SystemParams& params) {
    // Tridiagonal first-passage system (-A) m = 1. Its elimination pivots
    // are identically lambda since (lambda+mu) - lambda*mu/lambda = lambda,
    // which leaves only additions of positive terms.
    const int n = params.n;
    const double ratio = params.mu / params.lambda;
    std::vector<double> rhs(n);
    rhs[0] = 1.0;
    for (int j = 1; j < n; ++j) rhs[j] = 1.0 + ratio * rhs[j - 1];
    double m = 0.0;
    for (int j = n - 1; j >= 0; --j) m += rhs[j] / params.lambda;
    return m;
}

double survival_horizon(const SystemParams& params, double threshold) {
    if (!(threshold > 0.0) || threshold >= 1.0) {
        throw ValidationError(ErrorCode::ToleranceOutOfRange,
                              "survival threshold must lie in (0, 1)");
    }
    const double tol = std::min(1e-8, std::max(1e-12, 0.01 * threshold));
    double horizon = mean_lifetime(params);
    for (int iter = 0; iter < 200; ++iter) {
        const TransientSolution sol =
            solve_transient(params, TimeGrid{{horizon}}, tol);
        if (sol.survival(0) < threshold) return horizon;
        horizon *= 2.0;
    }
    throw InternalError(ErrorCode::InternalConsistency,
                        "survival horizon search failed to terminate");
}

TimeGrid default_grid(const SystemParams& params, int resolution) {
    if (resolution < 2) {
        throw ValidationError(ErrorCode::ResolutionTooSmall,
                              "resolution must be >= 2, got " +
                                  std::to_string(resolution));
    }
    const double horizon = survival_horizon(params, 1e-6);
    std::vector<double> pts(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) {
        pts[static_cast<std::size_t>(i)] =
            horizon * static_cast<double>(i) / static_cast<double>(resolution - 1);
    }
    return TimeGrid::make(std::move(pts));
}

std::vector<double> cdf_at_sorted_times(const SystemParams& params,
                                        std::span<const double> times, double tol) {
    std::vector<double> unique_pts;
    unique_pts.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0 || !std::isfinite(times[i])) {
            throw ValidationError(ErrorCode::InvalidGrid,
                                  "times must be finite and >= 0");
        }
        if (i > 0 && times[i] < times[i - 1]) {
            throw ValidationError(ErrorCode::UnsortedSamples,
                                  "times must be nondecreasing");
        }
        if (unique_pts.empty() || times[i] > unique_pts.back()) {
            unique_pts.push_back(times[i]);
        }
    }
    if (unique_pts.empty()) return {};
    std::vector<double> solve_pts = unique_pts;
    const TransientSolution sol =
        solve_transient(params, TimeGrid::make(std::move(solve_pts)), tol);

    std::vector<double> out(times.size());
    std::size_t u = 0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        while (unique_pts[u] < times[i]) ++u;
        out[i] = sol.absorbed[u];
    }
    return out;
}

}  // namespace standby

// Test-only reference computations, independent of the library's solver
// paths: Erlang closed forms, a dense matrix exponential of the full
// (n+1)-state generator, and Gauss-Legendre quadrature of exp(-s t) P_j(t).
#pragma once

#include <random>
#include <vector>

#include "standby/model.hpp"

namespace oracles {

/// Erlang(n, lambda) CDF: 1 - exp(-x) * sum_{k<n} x^k / k!.
double erlang_cdf(int n, double lambda, double t);
double erlang_survival(int n, double lambda, double t);

/// exp(Q t) for the full (n+1)-state generator (absorbing last row), dense
/// row-major, by Taylor series with scaling and squaring.
std::vector<double> expm_full_generator(const standby::SystemParams& params, double t);

/// integral of exp(-s t) P_j(t) dt over [0, horizon], all states at once,
/// by composite 16-point Gauss-Legendre with panel width 8/(s + 2(lambda+mu)).
/// P_j comes from solve_transient evaluated on the panel nodes.
std::vector<double> laplace_by_quadrature(const standby::SystemParams& params,
                                          double s, double horizon);

/// log-uniform draw from [lo, hi].
double log_uniform(std::mt19937_64& gen, double lo, double hi);

}  // namespace oracles

#include "standby/laplace.hpp"

#include <cmath>
#include <string>

namespace standby {

namespace {

void require_mu_positive(const SystemParams& params) {
    if (params.mu <= 0.0) {
        throw ValidationError(ErrorCode::ZeroMu,
                              "transform evaluation requires mu > 0");
    }
}

void require_s_nonnegative(double s) {
    if (!std::isfinite(s)) {
        throw ValidationError(ErrorCode::NonFiniteInput, "s must be finite");
    }
    if (s < 0.0) {
        throw ValidationError(ErrorCode::NegativeS,
                              "s must be >= 0, got " + std::to_string(s));
    }
}

}  // namespace

CharRoots char_roots(const SystemParams& params, double s) {
    require_mu_positive(params);
    require_s_nonnegative(s);
    const double total = params.lambda + params.mu + s;
    const double disc = total * total - 4.0 * params.lambda * params.mu;
    // (lambda+mu)^2 - 4*lambda*mu = (lambda-mu)^2, so disc >= 0 for s >= 0;
    // round-off can still push a repeated root a hair below zero.
    const double root = std::sqrt(std::max(disc, 0.0));
    const double q1 = (total + root) / (2.0 * params.mu);
    const double q2 = (params.lambda / params.mu) / q1;
    return CharRoots{s, q1, q2, disc};
}

namespace detail {

// Downward Thomas elimination for the boundary-value system. The exact
// pivots obey pivot_j = (lambda+mu+s) - lambda*mu/pivot_{j-1}, a recurrence
// whose relative error grows like (mu/lambda)^j when evaluated literally.
// Substituting pivot_j = (lambda+s) + mu*w_j turns it into
//   w_0 = 0,  w_j = (s + mu*w_{j-1}) / pivot_{j-1},
// which contains no subtraction at all; neither do the forward-eliminated
// right-hand side r_j = r_{j-1]*lambda/pivot_{j-1} nor the back
// substitution phi_j = (r_j + mu*phi_{j+1}) / pivot_j. Every phi_j is
// therefore accurate to O(n*eps) relative, uniformly in lambda/mu, and
// lambda*phi_{n-1}(0) evaluates to 1 up to one rounding.
std::vector<double> phi_tridiagonal_unchecked(const SystemParams& params, double s) {
    const int n = params.n;
    const double lambda = params.lambda;
    const double mu = params.mu;

    std::vector<double> pivot(n);
    std::vector<double> rhs(n);
    double w = 0.0;
    pivot[0] = (lambda + s);
    rhs[0] = 1.0;
    for (int j = 1; j < n; ++j) {
        if (!(pivot[j - 1] > 0.0) || !std::isfinite(pivot[j - 1])) {
            throw DomainError(ErrorCode::DegenerateRoots,
                              "pivot left (0, inf); s is outside the "
                              "transform's analytic strip");
        }
        w = (s + mu * w) / pivot[j - 1];
        pivot[j] = (lambda + s) + mu * w;
        rhs[j] = rhs[j - 1] * lambda / pivot[j - 1];
    }
    if (!(pivot[n - 1] > 0.0) || !std::isfinite(pivot[n - 1])) {
        throw DomainError(ErrorCode::DegenerateRoots,
                          "pivot left (0, inf); s is outside the "
                          "transform's analytic strip");
    }

    std::vector<double> phi(n);
    phi[n - 1] = rhs[n - 1] / pivot[n - 1];
    for (int j = n - 2; j >= 0; --j) {
        phi[j] = (rhs[j] + mu * phi[j + 1]) / pivot[j];
    }
    return phi;
}

}  // namespace detail

namespace {

bool roots_degenerate(double disc, double total) {
    return disc < 1e-12 * total * total;
}

std::optional<CharRoots> try_roots(const SystemParams& params, double s) {
    const double total = params.lambda + params.mu + s;
    const double disc = total * total - 4.0 * params.lambda * params.mu;
    if (roots_degenerate(disc, total)) return std::nullopt;
    return char_roots(params, s);
}

}  // namespace

LaplaceEvaluation phi_tridiagonal(const SystemParams& params, double s) {
    require_mu_positive(params);
    require_s_nonnegative(s);
    LaplaceEvaluation eval;
    eval.s = s;
    eval.phi = detail::phi_tridiagonal_unchecked(params, s);
    eval.roots = try_roots(params, s);
    return eval;
}

LaplaceEvaluation phi_closed_form(const SystemParams& params, double s) {
    require_mu_positive(params);
    require_s_nonnegative(s);
    if (params.n > kClosedFormMaxElements) {
        throw ValidationError(
            ErrorCode::ElementCountTooLargeForClosedForm,
            "closed form is restricted to n <= " +
                std::to_string(kClosedFormMaxElements) + ", got " +
                std::to_string(params.n));
    }
    const double lambda = params.lambda;
    const double mu = params.mu;
    const double total = lambda + mu + s;
    const double disc = total * total - 4.0 * lambda * mu;
    if (roots_degenerate(disc, total)) {
        throw DomainError(ErrorCode::DegenerateRoots,
                          "discriminant below 1e-12*(lambda+mu+s)^2; use the "
                          "tridiagonal path");
    }
    const CharRoots roots = char_roots(params, s);
    const double q1 = roots.q1;
    const double q2 = roots.q2;

    const double q1_pow = detail::pow_int(q1, params.n - 2);
    const double q2_pow = detail::pow_int(q2, params.n - 2);
    const double denom = q2_pow * (lambda - q2 * total) * (mu * q1 - (lambda + s)) +
                         q1_pow * (mu * q2 - (lambda + s)) * (q1 * total - lambda);
    const double a = q2_pow * (q2 * total - lambda) / denom;
    const double b = q1_pow * (lambda - q1 * total) / denom;

    LaplaceEvaluation eval;
    eval.s = s;
    eval.roots = roots;
    eval.coeff_a = a;
    eval.coeff_b = b;
    eval.phi.resize(params.n);
    double p1 = 1.0;
    double p2 = 1.0;
    for (int j = 0; j < params.n; ++j) {
        eval.phi[j] = a * p1 + b * p2;
        p1 *= q1;
        p2 *= q2;
    }
    return eval;
}

double lst_tau(const SystemParams& params, double s) {
    require_mu_positive(params);
    require_s_nonnegative(s);
    return params.lambda * detail::phi_tridiagonal_unchecked(params, s).back();
}

double phi_special_n2(double lambda, double mu, double s) {
    if (mu <= 0.0) throw ValidationError(ErrorCode::ZeroMu, "requires mu > 0");
    require_s_nonnegative(s);
    return lambda / (s * s + s * (2.0 * lambda + mu) + lambda * lambda);
}

double phi_special_n3(double lambda, double mu, double s) {
    if (mu <= 0.0) throw ValidationError(ErrorCode::ZeroMu, "requires mu > 0");
    require_s_nonnegative(s);
    const double sl = s + lambda;
    return lambda * lambda /
           (sl * sl * sl + 2.0 * mu * s * s + 2.0 * mu * lambda * s + mu * mu * s);
}

}  // namespace standby

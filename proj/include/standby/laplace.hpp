#pragma once

#include <optional>
#include <vector>

#include "standby/model.hpp"

namespace standby {

/**
 * @brief Roots of the characteristic quadratic
 *        mu*q^2 - (lambda+mu+s)*q + lambda = 0.
 *
 * For real s >= 0 the discriminant (lambda+mu+s)^2 - 4*lambda*mu is
 * nonnegative, so both roots are real with q1 >= q2 > 0. They satisfy
 * q1*q2 = lambda/mu and q1 + q2 = (lambda+mu+s)/mu.
 */
struct CharRoots {
    double s;
    double q1;
    double q2;
    double discriminant;
};

/**
 * @brief Values of the state-probability transforms phi_0(s)..phi_{n-1}(s).
 *
 * phi_j(s) = integral of exp(-s t) P_j(t) dt over [0, inf). The lifetime's
 * Laplace-Stieltjes transform is lambda * phi_{n-1}(s). Roots are attached
 * when the discriminant is not degenerate; the coefficient pair (A, B) of
 * the general term A q1^j + B q2^j is present only on the closed-form path.
 */
struct LaplaceEvaluation {
    double s;
    std::vector<double> phi;
    std::optional<CharRoots> roots;
    std::optional<double> coeff_a;
    std::optional<double> coeff_b;

    double lifetime_lst(double lambda) const { return lambda * phi.back(); }
};

/// Both characteristic roots, computed cancellation-safely: q1 by the
/// explicit formula with the plus sign, q2 as (lambda/mu)/q1 through the
/// product identity. Requires mu > 0 and s >= 0.
CharRoots char_roots(const SystemParams& params, double s);

/**
 * @brief Primary transform evaluation: direct tridiagonal elimination.
 *
 * Solves the n-by-n boundary-value system
 *   (lambda+s) phi_0 - mu phi_1 = 1
 *   -lambda phi_{j-1} + (lambda+mu+s) phi_j - mu phi_{j+1} = 0
 *   -lambda phi_{n-2} + (lambda+mu+s) phi_{n-1} = 0
 * with the pivots carried in a subtraction-free form (see laplace.cpp), so
 * every component keeps componentwise relative accuracy O(n*eps) even for
 * extreme lambda/mu ratios. Requires mu > 0 and s >= 0.
 */
LaplaceEvaluation phi_tridiagonal(const SystemParams& params, double s);

/**
 * @brief Verification path: explicit root/coefficient closed form.
 *
 * phi_j = A(s) q1^j + B(s) q2^j with A and B evaluated exactly as the
 * displayed quotient expressions. Capped at n <= 20 because q1^{n-2} and
 * the shared denominator lose precision as n grows. Raises DegenerateRoots
 * when the discriminant falls below 1e-12*(lambda+mu+s)^2 (callers should
 * fall back to phi_tridiagonal; no repeated-root form is provided).
 */
LaplaceEvaluation phi_closed_form(const SystemParams& params, double s);

inline constexpr int kClosedFormMaxElements = 20;

/// E exp(-s tau) = lambda * phi_{n-1}(s), tridiagonal path. In (0, 1] for
/// s >= 0, equal to 1 at s = 0, strictly decreasing in s.
double lst_tau(const SystemParams& params, double s);

/// Fixed test oracle: the displayed n=2 rational function
/// phi_1(s) = lambda / (s^2 + s(2 lambda + mu) + lambda^2).
double phi_special_n2(double lambda, double mu, double s);

/// Fixed test oracle: the displayed n=3 rational function
/// phi_2(s) = lambda^2 / ((s+lambda)^3 + 2 mu s^2 + 2 mu lambda s + mu^2 s).
double phi_special_n3(double lambda, double mu, double s);

namespace detail {
/// Tridiagonal solve without the s >= 0 range check. The rational
/// functions phi_j extend analytically to s > -beta where -beta is the
/// dominant pole; used by derivative cross-checks that need values at
/// s = -h for tiny h. Raises DomainError if a pivot leaves (0, inf).
std::vector<double> phi_tridiagonal_unchecked(const SystemParams& params, double s);
}  // namespace detail

}  // namespace standby

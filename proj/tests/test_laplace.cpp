#include <doctest.h>

#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "oracles.hpp"
#include "standby/laplace.hpp"
#include "standby/transient.hpp"

using namespace standby;

TEST_SUITE_BEGIN("laplace");

TEST_CASE("characteristic roots by hand: (lambda=1, mu=4, s=0)") {
    const CharRoots r = char_roots(validate_params(2, 1.0, 4.0), 0.0);
    CHECK(r.q1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.q2 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(r.q1 * r.q2 == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("repeated root at lambda = mu, s = 0") {
    const CharRoots r = char_roots(validate_params(2, 1.0, 1.0), 0.0);
    CHECK(r.q1 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.q2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(r.discriminant) < 1e-12);
}

TEST_CASE("small root approaches lambda/mu for large mu") {
    const CharRoots r = char_roots(validate_params(2, 1.0, 100.0), 0.0);
    CHECK(std::abs(r.q2 - 0.01) <= 0.05 * 0.01);
}

TEST_CASE("root preconditions") {
    CHECK_THROWS_AS(char_roots(validate_params(2, 1.0, 0.0), 1.0), ValidationError);
    CHECK_THROWS_AS(char_roots(validate_params(2, 1.0, 1.0), -0.5), ValidationError);
}

TEST_CASE("root identities over randomized triples") {
    std::mt19937_64 gen(303);
    for (int rep = 0; rep < 10000; ++rep) {
        const double lambda = oracles::log_uniform(gen, 1e-3, 1e3);
        const double mu = oracles::log_uniform(gen, 1e-3, 1e3);
        const double s = (rep % 10 == 0) ? 0.0 : oracles::log_uniform(gen, 1e-3, 1e3);
        const CharRoots r = char_roots(validate_params(2, lambda, mu), s);
        const double product = lambda / mu;
        const double sum = (lambda + mu + s) / mu;
        CHECK(std::abs(r.q1 * r.q2 - product) <= 1e-10 * product);
        CHECK(std::abs(r.q1 + r.q2 - sum) <= 1e-10 * sum);
    }
}

TEST_CASE("tridiagonal path: normalization and displayed values") {
    const SystemParams p2 = validate_params(2, 1.0, 10.0);
    CHECK(phi_tridiagonal(p2, 0.0).phi[1] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(phi_tridiagonal(p2, 1.0).phi[1] ==
          doctest::Approx(1.0 / 14.0).epsilon(1e-12));
    const SystemParams p3 = validate_params(3, 1.0, 10.0);
    CHECK(phi_tridiagonal(p3, 0.0).phi[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tridiagonal path rejects mu = 0 and negative s") {
    CHECK_THROWS_AS(phi_tridiagonal(validate_params(2, 1.0, 0.0), 1.0),
                    ValidationError);
    CHECK_THROWS_AS(phi_tridiagonal(validate_params(2, 1.0, 1.0), -1.0),
                    ValidationError);
    CHECK_THROWS_AS(lst_tau(validate_params(2, 1.0, 0.0), 0.0), ValidationError);
}

TEST_CASE("normalization lambda*phi_{n-1}(0) = 1 across regimes") {
    std::mt19937_64 gen(404);
    for (int n = 2; n <= 30; ++n) {
        for (int rep = 0; rep < 10; ++rep) {
            const double lambda = oracles::log_uniform(gen, 1e-2, 1e2);
            const double mu = oracles::log_uniform(gen, 1e-2, 1e2);
            const SystemParams p = validate_params(n, lambda, mu);
            CHECK(std::abs(lst_tau(p, 0.0) - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("all phi_j stay positive and the transform decreases in s") {
    const SystemParams p = validate_params(6, 0.8, 2.5);
    double previous = 2.0;
    for (const double s : {0.0, 0.05, 0.3, 1.0, 4.0, 20.0}) {
        const LaplaceEvaluation eval = phi_tridiagonal(p, s);
        for (const double phi : eval.phi) CHECK(phi > 0.0);
        const double lst = eval.lifetime_lst(p.lambda);
        CHECK(lst > 0.0);
        CHECK(lst <= 1.0);
        CHECK(lst < previous);
        previous = lst;
    }
}

TEST_CASE("closed form agrees with the displayed n=3 value") {
    const SystemParams p = validate_params(3, 2.0, 20.0);
    const LaplaceEvaluation eval = phi_closed_form(p, 0.5);
    CHECK(eval.phi[2] == doctest::Approx(4.0 / 265.625).epsilon(1e-12));
    CHECK(eval.coeff_a.has_value());
    CHECK(eval.coeff_b.has_value());
    CHECK(eval.roots.has_value());
}

TEST_CASE("closed form matches tridiagonal at n=2, s=1") {
    const SystemParams p = validate_params(2, 1.0, 10.0);
    const double closed = phi_closed_form(p, 1.0).phi[1];
    const double tri = phi_tridiagonal(p, 1.0).phi[1];
    CHECK(std::abs(closed - tri) <= 1e-10 * std::abs(tri));
}

TEST_CASE("closed form degeneracy and cap") {
    CHECK_THROWS_AS(phi_closed_form(validate_params(4, 1.0, 1.0), 0.0), DomainError);
    CHECK_THROWS_AS(phi_closed_form(validate_params(21, 1.0, 2.0), 1.0),
                    ValidationError);
    CHECK_NOTHROW(phi_closed_form(validate_params(20, 1.0, 2.0), 1.0));
}

TEST_CASE("cross-path equivalence on randomized non-degenerate sets") {
    std::mt19937_64 gen(505);
    int tested = 0;
    while (tested < 150) {
        const int n = 2 + static_cast<int>(gen() % 9);
        const double lambda = oracles::log_uniform(gen, 0.1, 10.0);
        const double mu = lambda * oracles::log_uniform(gen, 0.1, 10.0);
        const double s = lambda * oracles::log_uniform(gen, 0.1, 10.0);
        const SystemParams p = validate_params(n, lambda, mu);
        const double total = lambda + mu + s;
        if (total * total - 4.0 * lambda * mu < 1e-6 * total * total) continue;
        const LaplaceEvaluation tri = phi_tridiagonal(p, s);
        const LaplaceEvaluation closed = phi_closed_form(p, s);
        for (int j = 0; j < n; ++j) {
            CHECK(std::abs(tri.phi[j] - closed.phi[j]) <=
                  1e-8 * std::abs(tri.phi[j]));
        }
        ++tested;
    }
}

TEST_CASE("special forms evaluate the displayed rational functions") {
    CHECK(phi_special_n2(1.0, 10.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(phi_special_n3(1.0, 10.0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(phi_special_n2(1.0, 10.0, 1.0) ==
          doctest::Approx(1.0 / 14.0).epsilon(1e-14));
    CHECK_THROWS_AS(phi_special_n2(1.0, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(phi_special_n3(1.0, 1.0, -1.0), ValidationError);
}

TEST_CASE("special forms agree with the tridiagonal path") {
    std::mt19937_64 gen(606);
    for (int rep = 0; rep < 40; ++rep) {
        const double lambda = oracles::log_uniform(gen, 0.05, 20.0);
        const double mu = oracles::log_uniform(gen, 0.05, 20.0);
        const double s = (rep % 5 == 0) ? 0.0 : oracles::log_uniform(gen, 0.01, 20.0);
        const double via2 = phi_special_n2(lambda, mu, s);
        const double tri2 = phi_tridiagonal(validate_params(2, lambda, mu), s).phi[1];
        CHECK(std::abs(via2 - tri2) <= 1e-10 * std::abs(tri2));
        const double via3 = phi_special_n3(lambda, mu, s);
        const double tri3 = phi_tridiagonal(validate_params(3, lambda, mu), s).phi[2];
        CHECK(std::abs(via3 - tri3) <= 1e-10 * std::abs(tri3));
    }
}

TEST_CASE("transform matches time-domain quadrature") {
    for (const int n : {2, 3}) {
        const SystemParams p = validate_params(n, 1.0, 2.0);
        const double horizon = survival_horizon(p, 1e-10);
        for (const double s : {0.1, 1.0, 10.0}) {
            const std::vector<double> integrals =
                oracles::laplace_by_quadrature(p, s, horizon);
            const LaplaceEvaluation eval = phi_tridiagonal(p, s);
            for (int j = 0; j < n; ++j) {
                CHECK(std::abs(integrals[j] - eval.phi[j]) <= 1e-5);
            }
        }
    }
}

TEST_CASE("transform derivative at 0 reproduces the mean lifetime") {
    const std::vector<std::tuple<int, double, double>> cases{
        {2, 1.0, 10.0}, {3, 1.0, 5.0}, {4, 2.0, 3.0}};
    for (const auto& [n, lambda, mu] : cases) {
        const SystemParams p = validate_params(n, lambda, mu);
        const double h = 1e-5 / lambda;
        const double plus = lambda * detail::phi_tridiagonal_unchecked(p, h).back();
        const double minus = lambda * detail::phi_tridiagonal_unchecked(p, -h).back();
        const double derivative = (minus - plus) / (2.0 * h);
        const double mean = mean_lifetime(p);
        CHECK(std::abs(derivative - mean) <= 1e-3 * mean);
    }
    const double mean2 = mean_lifetime(validate_params(2, 1.0, 10.0));
    CHECK(std::abs(mean2 - 12.0) <= 1e-10 * 12.0);
}

TEST_SUITE_END();

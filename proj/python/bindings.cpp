#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "standby/asymptotics.hpp"
#include "standby/laplace.hpp"
#include "standby/model.hpp"
#include "standby/montecarlo.hpp"
#include "standby/transient.hpp"

namespace py = pybind11;
using namespace pybind11::literals;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lifetime distribution of an n-element cold-standby repairable "
              "system with one repair device: transient Kolmogorov solution, "
              "exact Laplace transforms, Monte Carlo, and the high-reliability "
              "limit Exp(lambda) of the normalized lifetime.";
    m.attr("__version__") = STANDBY_VERSION;

    py::register_exception<standby::DomainError>(m, "NumericalDomainError",
                                                 PyExc_ArithmeticError);
    py::register_exception<standby::InternalError>(m, "InternalConsistencyError",
                                                   PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const standby::ValidationError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<standby::SystemParams>(m, "SystemParams")
        .def_readonly("n", &standby::SystemParams::n)
        .def_readonly("lambda_", &standby::SystemParams::lambda)
        .def_readonly("mu", &standby::SystemParams::mu)
        .def("__repr__", [](const standby::SystemParams& p) {
            return "SystemParams(n=" + std::to_string(p.n) +
                   ", lambda=" + std::to_string(p.lambda) +
                   ", mu=" + std::to_string(p.mu) + ")";
        });

    m.def("validate_params", &standby::validate_params, "n"_a, "lambda_"_a, "mu"_a,
          "max_elements"_a = standby::kDefaultMaxElements,
          "Validate the (n, lambda, mu) triple; raises ValueError otherwise.");

    py::class_<standby::GeneratorDescription>(m, "GeneratorDescription")
        .def_readonly("n", &standby::GeneratorDescription::n)
        .def("up_rate", &standby::GeneratorDescription::up_rate, "j"_a)
        .def("down_rate", &standby::GeneratorDescription::down_rate, "j"_a)
        .def("diagonal", &standby::GeneratorDescription::diagonal, "j"_a);

    m.def("build_generator", &standby::build_generator, "params"_a);

    py::class_<standby::EpsilonScale>(m, "EpsilonScale")
        .def_readonly("epsilon", &standby::EpsilonScale::epsilon)
        .def_readonly("exponent", &standby::EpsilonScale::exponent)
        .def_readonly("scale", &standby::EpsilonScale::scale);

    m.def("epsilon_scale", &standby::epsilon_scale, "params"_a);

    py::class_<standby::TransientSolution>(m, "TransientSolution")
        .def_property_readonly(
            "grid",
            [](const standby::TransientSolution& s) { return s.grid.points; })
        .def_readonly("n", &standby::TransientSolution::n)
        .def_readonly("cdf", &standby::TransientSolution::absorbed)
        .def_readonly("density", &standby::TransientSolution::density)
        .def("prob", &standby::TransientSolution::prob, "point"_a, "state"_a)
        .def("survival", &standby::TransientSolution::survival, "point"_a)
        .def("state_probabilities",
             [](const standby::TransientSolution& s, std::size_t point) {
                 std::vector<double> row(static_cast<std::size_t>(s.n));
                 for (int j = 0; j < s.n; ++j) row[static_cast<std::size_t>(j)] = s.prob(point, j);
                 return row;
             },
             "point"_a);

    m.def(
        "solve_transient",
        [](const standby::SystemParams& params, const std::vector<double>& grid,
           double tol) {
            return standby::solve_transient(params, standby::TimeGrid::make(grid), tol);
        },
        "params"_a, "grid"_a, "tol"_a = standby::kDefaultSolveTol,
        "Solve the Kolmogorov system on a strictly increasing time grid by "
        "uniformization.");
    m.def("lifetime_cdf", &standby::lifetime_cdf, "solution"_a, "t"_a);
    m.def("mean_lifetime", &standby::mean_lifetime, "params"_a,
          "Expected lifetime from the first-passage linear system.");
    m.def(
        "default_grid",
        [](const standby::SystemParams& params, int resolution) {
            return standby::default_grid(params, resolution).points;
        },
        "params"_a, "resolution"_a);
    m.def("survival_horizon", &standby::survival_horizon, "params"_a, "threshold"_a);
    m.def(
        "cdf_at_sorted_times",
        [](const standby::SystemParams& params, const std::vector<double>& times,
           double tol) {
            return standby::cdf_at_sorted_times(params, times, tol);
        },
        "params"_a, "times"_a, "tol"_a = standby::kDefaultSolveTol);

    py::class_<standby::CharRoots>(m, "CharRoots")
        .def_readonly("s", &standby::CharRoots::s)
        .def_readonly("q1", &standby::CharRoots::q1)
        .def_readonly("q2", &standby::CharRoots::q2)
        .def_readonly("discriminant", &standby::CharRoots::discriminant);

    py::class_<standby::LaplaceEvaluation>(m, "LaplaceEvaluation")
        .def_readonly("s", &standby::LaplaceEvaluation::s)
        .def_readonly("phi", &standby::LaplaceEvaluation::phi)
        .def_readonly("roots", &standby::LaplaceEvaluation::roots)
        .def_readonly("coeff_a", &standby::LaplaceEvaluation::coeff_a)
        .def_readonly("coeff_b", &standby::LaplaceEvaluation::coeff_b)
        .def("lifetime_lst", &standby::LaplaceEvaluation::lifetime_lst, "lambda_"_a);

    m.def("char_roots", &standby::char_roots, "params"_a, "s"_a);
    m.def("phi_tridiagonal", &standby::phi_tridiagonal, "params"_a, "s"_a);
    m.def("phi_closed_form", &standby::phi_closed_form, "params"_a, "s"_a);
    m.def("lst_tau", &standby::lst_tau, "params"_a, "s"_a,
          "E exp(-s tau) = lambda * phi_{n-1}(s), tridiagonal path.");
    m.def("phi_special_n2", &standby::phi_special_n2, "lambda_"_a, "mu"_a, "s"_a);
    m.def("phi_special_n3", &standby::phi_special_n3, "lambda_"_a, "mu"_a, "s"_a);

    py::class_<standby::SimulationResult>(m, "SimulationResult")
        .def_readonly("samples", &standby::SimulationResult::samples)
        .def_readonly("seed", &standby::SimulationResult::seed)
        .def_readonly("sample_mean", &standby::SimulationResult::sample_mean)
        .def_readonly("sample_variance", &standby::SimulationResult::sample_variance)
        .def_readonly("sorted", &standby::SimulationResult::sorted);

    m.def(
        "run_trials",
        [](const standby::SystemParams& params, std::uint64_t trials,
           std::uint64_t seed, int threads) {
            return standby::run_trials({params, trials, seed}, threads);
        },
        "params"_a, "trials"_a, "seed"_a, "threads"_a = 1,
        "Event-driven Monte Carlo; trial i always draws from counter stream "
        "(seed, i), so the result is independent of the thread count.");
    m.def("sorted_result", &standby::sorted_result, "result"_a);
    m.def("empirical_cdf", &standby::empirical_cdf, "result"_a, "t"_a);
    m.def("sample_lifetimes_aggregated", &standby::sample_lifetimes_aggregated,
          "params"_a, "trials"_a, "seed"_a,
          "Exact-in-distribution sampler via per-level visit counts; use for "
          "large mu/lambda.");

    py::class_<standby::ConvergenceEntry>(m, "ConvergenceEntry")
        .def_readonly("mu", &standby::ConvergenceEntry::mu)
        .def_readonly("epsilon", &standby::ConvergenceEntry::epsilon)
        .def_readonly("scale", &standby::ConvergenceEntry::scale)
        .def_readonly("lst_sup_error", &standby::ConvergenceEntry::lst_sup_error)
        .def_readonly("ks_analytic", &standby::ConvergenceEntry::ks_analytic)
        .def_readonly("ks_montecarlo", &standby::ConvergenceEntry::ks_montecarlo);

    py::class_<standby::ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("n", &standby::ConvergenceReport::n)
        .def_readonly("lambda_", &standby::ConvergenceReport::lambda)
        .def_readonly("trials", &standby::ConvergenceReport::trials)
        .def_readonly("seed", &standby::ConvergenceReport::seed)
        .def_readonly("s_grid", &standby::ConvergenceReport::s_grid)
        .def_readonly("t_grid", &standby::ConvergenceReport::t_grid)
        .def_readonly("entries", &standby::ConvergenceReport::entries);

    m.def("normalized_cdf_analytic", &standby::normalized_cdf_analytic, "params"_a,
          "t"_a);
    m.def(
        "normalized_cdf_curve",
        [](const standby::SystemParams& params, const std::vector<double>& grid) {
            return standby::normalized_cdf_curve(params, grid);
        },
        "params"_a, "t_normalized"_a);
    m.def(
        "lst_limit_error",
        [](const standby::SystemParams& params, const std::vector<double>& s_grid) {
            return standby::lst_limit_error(params, s_grid);
        },
        "params"_a, "s_grid"_a);
    m.def(
        "ks_vs_exponential",
        [](const std::vector<double>& sorted_samples, double lambda) {
            return standby::ks_vs_exponential(sorted_samples, lambda);
        },
        "sorted_samples"_a, "lambda_"_a);
    m.def(
        "ks_empirical_vs_cdf",
        [](const std::vector<double>& sorted_samples, const std::vector<double>& cdf) {
            return standby::ks_empirical_vs_cdf(sorted_samples, cdf);
        },
        "sorted_samples"_a, "cdf_at_samples"_a);
    m.def("default_s_grid", &standby::default_s_grid, "lambda_"_a);
    m.def("default_t_grid", &standby::default_t_grid, "lambda_"_a);
    m.def(
        "convergence_sweep",
        [](int n, double lambda, const std::vector<double>& mu_values,
           std::uint64_t trials, std::uint64_t seed,
           const std::vector<double>& s_grid) {
            return standby::convergence_sweep(n, lambda, mu_values, trials, seed,
                                              s_grid);
        },
        "n"_a, "lambda_"_a, "mu_values"_a, "trials"_a, "seed"_a,
        "s_grid"_a = std::vector<double>{});
}

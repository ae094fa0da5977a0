// Command-line front end: batch computations with machine-readable CSV/JSON
// output. Exit codes: 0 success, 2 invalid input, 3 numerical-domain
// failure (e.g. degenerate roots under --method closed), 4 internal
// consistency failure.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "standby/asymptotics.hpp"
#include "standby/laplace.hpp"
#include "standby/model.hpp"
#include "standby/montecarlo.hpp"
#include "standby/transient.hpp"

using nlohmann::json;

namespace {

std::string fmt17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string fmt_short(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%g", value);
    return buf;
}

std::vector<double> parse_double_list(const std::string& text, const char* field) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw standby::ValidationError(standby::ErrorCode::NonFiniteInput,
                                           std::string(field) + ": cannot parse '" +
                                               item + "' as a number");
        }
    }
    if (values.empty()) {
        throw standby::ValidationError(standby::ErrorCode::EmptyGrid,
                                       std::string(field) + ": empty list");
    }
    return values;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t hash = 1469598103934665603ULL;
    for (const unsigned char c : bytes) {
        hash ^= c;
        hash *= 1099511628211ULL;
    }
    return hash;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << contents;
    if (!out) throw std::runtime_error("failed writing " + path);
}

std::string checksum_string(const std::string& path) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(read_file(path))));
    return buf;
}

json make_manifest(const std::string& command, const json& parameters,
                   std::optional<std::uint64_t> seed,
                   const std::vector<std::string>& output_paths) {
    json outputs = json::object();
    for (const auto& path : output_paths) outputs[path] = checksum_string(path);
    json manifest{{"command", command},
                  {"version", STANDBY_VERSION},
                  {"parameters", parameters},
                  {"outputs", outputs}};
    if (seed) manifest["seed"] = *seed;
    return manifest;
}

void write_sidecar_manifest(const std::string& csv_path, const json& manifest) {
    write_file(csv_path + ".manifest.json", manifest.dump(2) + "\n");
}

std::string default_summary_path(const std::string& out) {
    return out + ".summary.json";
}

// Expands `--config <file>` into the argument list. The file holds one
// `key=value` pair per line (keys are the long option names without the
// leading dashes; blank lines and lines starting with '#' are skipped).
// A key already given as a flag on the command line wins over the file.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::string config_path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw standby::ValidationError(standby::ErrorCode::NonFiniteInput,
                                               "--config requires a file path");
            }
            config_path = args[i + 1];
            args.erase(args.begin() + static_cast<long>(i),
                       args.begin() + static_cast<long>(i) + 2);
            break;
        }
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) {
        throw standby::ValidationError(standby::ErrorCode::NonFiniteInput,
                                       "cannot read config file " + config_path);
    }
    std::string line;
    while (std::getline(in, line)) {
        const std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos) continue;
        if (line[start] == '#') continue;
        const std::size_t eq = line.find('=', start);
        if (eq == std::string::npos) {
            throw standby::ValidationError(standby::ErrorCode::NonFiniteInput,
                                           "config line is not key=value: " + line);
        }
        auto trim = [](std::string text) {
            const std::size_t first = text.find_first_not_of(" \t\r");
            const std::size_t last = text.find_last_not_of(" \t\r");
            if (first == std::string::npos) return std::string();
            return text.substr(first, last - first + 1);
        };
        const std::string key = trim(line.substr(start, eq - start));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw standby::ValidationError(standby::ErrorCode::NonFiniteInput,
                                           "config line has an empty key: " + line);
        }
        const std::string flag = "--" + key;
        bool already_given = false;
        for (const std::string& arg : args) {
            if (arg == flag) {
                already_given = true;
                break;
            }
        }
        if (!already_given) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

std::string default_csv_companion(const std::string& out) {
    const std::string suffix = ".json";
    if (out.size() > suffix.size() &&
        out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0) {
        return out.substr(0, out.size() - suffix.size()) + ".csv";
    }
    return out + ".csv";
}

// ---------------------------------------------------------------------------

struct SolveOptions {
    int n = 0;
    double lambda = 0.0;
    double mu = 0.0;
    double t_max = -1.0;  // <0: choose by the survival horizon
    int points = 401;
    double tol = standby::kDefaultSolveTol;
    std::string out;
};

void run_solve(const SolveOptions& opt) {
    const standby::SystemParams params =
        standby::validate_params(opt.n, opt.lambda, opt.mu);
    standby::TimeGrid grid{{}};
    if (opt.t_max >= 0.0) {
        if (opt.points < 2) {
            throw standby::ValidationError(standby::ErrorCode::ResolutionTooSmall,
                                           "points must be >= 2");
        }
        std::vector<double> pts(static_cast<std::size_t>(opt.points));
        for (int i = 0; i < opt.points; ++i) {
            pts[static_cast<std::size_t>(i)] =
                opt.t_max * static_cast<double>(i) / static_cast<double>(opt.points - 1);
        }
        grid = standby::TimeGrid::make(std::move(pts));
    } else {
        grid = standby::default_grid(params, opt.points);
    }
    const standby::TransientSolution sol =
        standby::solve_transient(params, grid, opt.tol);

    std::ostringstream csv;
    csv << "t";
    for (int j = 0; j < params.n; ++j) csv << ",P_" << j;
    csv << ",cdf,density\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        csv << fmt17(grid.points[i]);
        for (int j = 0; j < params.n; ++j) csv << ',' << fmt17(sol.prob(i, j));
        csv << ',' << fmt17(sol.absorbed[i]) << ',' << fmt17(sol.density[i]) << '\n';
    }
    write_file(opt.out, csv.str());

    const json parameters{{"n", opt.n},       {"lambda", opt.lambda},
                          {"mu", opt.mu},     {"t_max", opt.t_max},
                          {"points", opt.points}, {"tol", opt.tol},
                          {"out", opt.out}};
    write_sidecar_manifest(opt.out,
                           make_manifest("solve", parameters, std::nullopt, {opt.out}));
}

// ---------------------------------------------------------------------------

struct LaplaceOptions {
    int n = 0;
    double lambda = 0.0;
    double mu = 0.0;
    std::string s_list;
    std::string method = "tridiagonal";
    std::string out;
};

void run_laplace(const LaplaceOptions& opt) {
    const standby::SystemParams params =
        standby::validate_params(opt.n, opt.lambda, opt.mu);
    const std::vector<double> s_values = parse_double_list(opt.s_list, "--s");
    const bool want_tri = opt.method != "closed";
    const bool want_closed = opt.method != "tridiagonal";

    std::ostringstream csv;
    csv << "s";
    for (int j = 0; j < params.n; ++j) csv << ",phi_" << j;
    csv << ",lst_tau,q1,q2";
    if (opt.method == "both") csv << ",max_rel_discrepancy";
    csv << '\n';

    for (const double s : s_values) {
        std::optional<standby::LaplaceEvaluation> tri;
        std::optional<standby::LaplaceEvaluation> closed;
        if (want_tri) tri = standby::phi_tridiagonal(params, s);
        if (want_closed) closed = standby::phi_closed_form(params, s);
        const standby::LaplaceEvaluation& primary = want_tri ? *tri : *closed;

        csv << fmt17(s);
        for (int j = 0; j < params.n; ++j) csv << ',' << fmt17(primary.phi[j]);
        csv << ',' << fmt17(primary.lifetime_lst(params.lambda));
        if (want_closed) {
            csv << ',' << fmt17(closed->roots->q1) << ',' << fmt17(closed->roots->q2);
        } else {
            csv << ",,";
        }
        if (opt.method == "both") {
            double worst = 0.0;
            for (int j = 0; j < params.n; ++j) {
                const double denom = std::max(std::abs(tri->phi[j]), 1e-300);
                worst = std::max(worst, std::abs(tri->phi[j] - closed->phi[j]) / denom);
            }
            csv << ',' << fmt17(worst);
        }
        csv << '\n';
    }
    write_file(opt.out, csv.str());

    const json parameters{{"n", opt.n},   {"lambda", opt.lambda}, {"mu", opt.mu},
                          {"s", opt.s_list}, {"method", opt.method}, {"out", opt.out}};
    write_sidecar_manifest(
        opt.out, make_manifest("laplace", parameters, std::nullopt, {opt.out}));
}

// ---------------------------------------------------------------------------

struct SimulateOptions {
    int n = 0;
    double lambda = 0.0;
    double mu = 0.0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string out;
    std::string summary;
};

void run_simulate(const SimulateOptions& opt) {
    const standby::SystemParams params =
        standby::validate_params(opt.n, opt.lambda, opt.mu);
    const standby::SimulationResult result =
        standby::run_trials({params, opt.trials, opt.seed}, opt.threads);

    std::ostringstream csv;
    csv << "trial_index,tau\n";
    for (std::size_t i = 0; i < result.samples.size(); ++i) {
        csv << i << ',' << fmt17(result.samples[i]) << '\n';
    }
    write_file(opt.out, csv.str());

    const standby::SimulationResult sorted = standby::sorted_result(result);
    const std::vector<double> cdf =
        standby::cdf_at_sorted_times(params, sorted.samples);
    const double ks = standby::ks_empirical_vs_cdf(sorted.samples, cdf);

    const std::string summary_path =
        opt.summary.empty() ? default_summary_path(opt.out) : opt.summary;
    // --threads is an execution knob, not part of the run identity: outputs
    // are byte-identical across thread counts, so the manifest omits it.
    const json parameters{{"n", opt.n},       {"lambda", opt.lambda},
                          {"mu", opt.mu},     {"trials", opt.trials},
                          {"seed", opt.seed}, {"out", opt.out},
                          {"summary", summary_path}};
    const json summary{
        {"mean", result.sample_mean},
        {"variance", result.sample_variance},
        {"trials", result.samples.size()},
        {"seed", result.seed},
        {"ks_vs_analytic", ks},
        {"manifest", make_manifest("simulate", parameters, opt.seed, {opt.out})}};
    write_file(summary_path, summary.dump(2) + "\n");
}

// ---------------------------------------------------------------------------

struct ConvergeOptions {
    int n = 0;
    double lambda = 0.0;
    std::string mu_list;
    std::uint64_t trials = 100000;
    std::uint64_t seed = 0;
    std::string s_grid;
    std::string out;
    std::string csv_out;
};

void run_converge(const ConvergeOptions& opt) {
    const std::vector<double> mu_values = parse_double_list(opt.mu_list, "--mu");
    std::vector<double> s_grid;
    if (!opt.s_grid.empty()) s_grid = parse_double_list(opt.s_grid, "--s-grid");

    const standby::ConvergenceReport report = standby::convergence_sweep(
        opt.n, opt.lambda, mu_values, opt.trials, opt.seed, s_grid);

    const std::string csv_path =
        opt.csv_out.empty() ? default_csv_companion(opt.out) : opt.csv_out;

    // Companion CSV: normalized analytic CDF per mu against the limit law.
    std::ostringstream csv;
    csv << "t,exp_limit";
    for (const auto& entry : report.entries) csv << ",cdf_mu_" << fmt_short(entry.mu);
    csv << '\n';
    std::vector<std::vector<double>> curves;
    for (const auto& entry : report.entries) {
        const standby::SystemParams params =
            standby::validate_params(opt.n, opt.lambda, entry.mu);
        curves.push_back(standby::normalized_cdf_curve(params, report.t_grid));
    }
    for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
        const double t = report.t_grid[i];
        csv << fmt17(t) << ',' << fmt17(-std::expm1(-opt.lambda * t));
        for (const auto& curve : curves) csv << ',' << fmt17(curve[i]);
        csv << '\n';
    }
    write_file(csv_path, csv.str());

    json entries = json::array();
    for (const auto& entry : report.entries) {
        entries.push_back({{"mu", entry.mu},
                           {"epsilon", entry.epsilon},
                           {"scale", entry.scale},
                           {"lst_sup_error", entry.lst_sup_error},
                           {"ks_analytic", entry.ks_analytic},
                           {"ks_montecarlo", entry.ks_montecarlo}});
    }
    const json parameters{{"n", opt.n},           {"lambda", opt.lambda},
                          {"mu", opt.mu_list},    {"trials", opt.trials},
                          {"seed", opt.seed},     {"s_grid", opt.s_grid},
                          {"out", opt.out},       {"csv_out", csv_path}};
    const json doc{
        {"n", report.n},
        {"lambda", report.lambda},
        {"trials", report.trials},
        {"seed", report.seed},
        {"s_grid", report.s_grid},
        {"t_grid", {{"points", report.t_grid.size()}, {"t_max", report.t_grid.back()}}},
        {"entries", entries},
        {"manifest", make_manifest("converge", parameters, opt.seed, {csv_path})}};
    write_file(opt.out, doc.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lifetime distribution of an n-element cold-standby repairable "
                 "system with one repair device"};
    app.require_subcommand(1);
    app.set_version_flag("--version", STANDBY_VERSION);

    SolveOptions solve_opt;
    CLI::App* solve = app.add_subcommand(
        "solve", "Transient state probabilities, lifetime CDF and density");
    solve->add_option("--n", solve_opt.n, "element count (>= 2)")->required();
    solve->add_option("--lambda", solve_opt.lambda, "failure rate (> 0)")->required();
    solve->add_option("--mu", solve_opt.mu, "repair rate (>= 0)")->required();
    solve->add_option("--t-max", solve_opt.t_max,
                      "grid endpoint; default: doubled until survival < 1e-6");
    solve->add_option("--points", solve_opt.points, "grid size (default 401)");
    solve->add_option("--tol", solve_opt.tol, "solver tolerance in (0, 1e-6]");
    solve->add_option("--out", solve_opt.out, "output CSV path")->required();
    solve->callback([&] { run_solve(solve_opt); });

    LaplaceOptions laplace_opt;
    CLI::App* laplace = app.add_subcommand(
        "laplace", "State-probability Laplace transforms phi_j(s) and the "
                   "lifetime transform");
    laplace->add_option("--n", laplace_opt.n, "element count (>= 2)")->required();
    laplace->add_option("--lambda", laplace_opt.lambda, "failure rate (> 0)")->required();
    laplace->add_option("--mu", laplace_opt.mu, "repair rate (> 0)")->required();
    laplace->add_option("--s", laplace_opt.s_list, "comma-separated s values (>= 0)")
        ->required();
    laplace->add_option("--method", laplace_opt.method, "evaluation path")
        ->check(CLI::IsMember({"tridiagonal", "closed", "both"}));
    laplace->add_option("--out", laplace_opt.out, "output CSV path")->required();
    laplace->callback([&] { run_laplace(laplace_opt); });

    SimulateOptions sim_opt;
    CLI::App* simulate = app.add_subcommand(
        "simulate", "Monte Carlo lifetime samples with summary statistics");
    simulate->add_option("--n", sim_opt.n, "element count (>= 2)")->required();
    simulate->add_option("--lambda", sim_opt.lambda, "failure rate (> 0)")->required();
    simulate->add_option("--mu", sim_opt.mu, "repair rate (>= 0)")->required();
    simulate->add_option("--trials", sim_opt.trials, "trial count (>= 1)")->required();
    simulate->add_option("--seed", sim_opt.seed, "stream seed (default 0)");
    simulate->add_option("--threads", sim_opt.threads,
                         "worker threads; does not affect output bytes");
    simulate->add_option("--out", sim_opt.out, "samples CSV path")->required();
    simulate->add_option("--summary", sim_opt.summary,
                         "summary JSON path (default: <out>.summary.json)");
    simulate->callback([&] { run_simulate(sim_opt); });

    ConvergeOptions conv_opt;
    CLI::App* converge = app.add_subcommand(
        "converge", "Convergence of (lambda/mu)^{n-1} tau to Exp(lambda) over a "
                    "mu sweep");
    converge->add_option("--n", conv_opt.n, "element count (>= 2)")->required();
    converge->add_option("--lambda", conv_opt.lambda, "failure rate (> 0)")->required();
    converge->add_option("--mu", conv_opt.mu_list,
                         "comma-separated ascending repair rates, all > lambda")
        ->required();
    converge->add_option("--trials", conv_opt.trials, "Monte Carlo trials per mu");
    converge->add_option("--seed", conv_opt.seed, "stream seed (default 0)");
    converge->add_option("--s-grid", conv_opt.s_grid,
                         "comma-separated s values (default 0.1..10 x lambda)");
    converge->add_option("--out", conv_opt.out, "report JSON path")->required();
    converge->add_option("--csv-out", conv_opt.csv_out,
                         "companion CSV path (default: derived from --out)");
    converge->callback([&] { run_converge(conv_opt); });

    try {
        std::vector<std::string> args = expand_config(argc, argv);
        std::reverse(args.begin(), args.end());  // CLI11 consumes back-to-front
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const standby::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const standby::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const standby::InternalError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "fredbvp/problem_io.hpp"
#include "fredbvp/selftest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitHypothesis = 4;

struct GlobalFlags {
    std::optional<std::size_t> n_steps;
    std::optional<double> rank_tol;
    bool json = false;
};

fredbvp::Grid make_grid(const fredbvp::ProblemDocument& doc, const GlobalFlags& flags) {
    return fredbvp::Grid(doc.problem.interval, flags.n_steps.value_or(doc.n_steps));
}

void emit_report(const fredbvp::ReportData& data, bool as_json) {
    if (as_json) {
        std::cout << fredbvp::report_to_json(data).dump(2) << "\n";
    } else {
        std::cout << fredbvp::render_report_text(data);
    }
}

int run_analyze(const std::string& path, const GlobalFlags& flags) {
    const auto doc = fredbvp::parse_problem_file(path);
    const auto grid = make_grid(doc, flags);
    const auto solution = fredbvp::solve(doc.problem, grid, flags.rank_tol);

    fredbvp::ReportData data;
    data.hash = fredbvp::problem_hash(doc);
    data.char_matrix = solution.char_matrix;
    data.report = solution.report;
    data.classification = solution.classification;
    data.underdetermined = solution.underdetermined;
    data.least_squares_residual = solution.residual_norm;
    data.kernel_dim = static_cast<int>(solution.kernel_basis.size());
    emit_report(data, flags.json);
    return kExitOk;
}

int run_solve(const std::string& path, const GlobalFlags& flags,
              const std::optional<std::string>& out_csv) {
    const auto doc = fredbvp::parse_problem_file(path);
    const auto grid = make_grid(doc, flags);
    const auto solution = fredbvp::solve(doc.problem, grid, flags.rank_tol);
    const auto diagnostics = fredbvp::verify_solution(doc.problem, solution, grid);

    fredbvp::ReportData data;
    data.hash = fredbvp::problem_hash(doc);
    data.char_matrix = solution.char_matrix;
    data.report = solution.report;
    data.classification = solution.classification;
    data.underdetermined = solution.underdetermined;
    data.least_squares_residual = solution.residual_norm;
    data.ode_residual = diagnostics.ode_residual;
    data.boundary_residual = diagnostics.boundary_residual;
    data.kernel_dim = static_cast<int>(solution.kernel_basis.size());
    emit_report(data, flags.json);

    if (out_csv.has_value()) {
        std::ofstream out(*out_csv, std::ios::binary);
        if (!out) {
            std::cerr << "cannot open output file: " << *out_csv << "\n";
            return kExitParse;
        }
        fredbvp::write_solution_csv(out, solution, grid);
    }
    return kExitOk;
}

int run_converge(const std::string& path, const GlobalFlags& flags,
                 const std::optional<std::string>& out_csv) {
    const auto doc = fredbvp::parse_problem_file(path);
    if (!doc.family.has_value()) {
        throw fredbvp::ParseError("problem file: converge needs a 'limits' section");
    }
    const auto grid = make_grid(doc, flags);
    const auto trace = fredbvp::run_family(*doc.family, grid);
    const auto hypothesis = fredbvp::check_convergence_hypothesis(trace);
    const auto verdict = fredbvp::check_semicontinuity(trace, trace.base_report);

    std::ostream& out = std::cout;
    if (out_csv.has_value()) {
        std::ofstream file(*out_csv, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open output file: " << *out_csv << "\n";
            return kExitParse;
        }
        fredbvp::write_trace_csv(file, trace);
    } else {
        fredbvp::write_trace_csv(out, trace);
    }

    if (!hypothesis.coefficient_norm_converges) {
        std::cerr << "hypothesis check failed: ||A_k - A||_(s-1) does not decay "
                  << "(initial " << hypothesis.initial_norm << ", final "
                  << hypothesis.final_norm
                  << "); strong operator convergence is not in force\n";
        return kExitHypothesis;
    }
    if (verdict.holds) {
        out << "semicontinuity holds for all recorded k >= " << verdict.k_star << "\n";
    } else {
        out << "semicontinuity inequalities not reached within the recorded k range\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fredholm analysis and solver for general linear boundary-value problems"};
    app.require_subcommand(1);

    GlobalFlags flags;
    std::size_t n_steps_arg = 0;
    double rank_tol_arg = 0.0;
    auto* n_opt = app.add_option("--n-steps", n_steps_arg,
                                 "override the grid step count from the file");
    auto* tol_opt =
        app.add_option("--rank-tol", rank_tol_arg, "absolute rank tolerance override");
    app.add_flag("--json", flags.json, "emit machine-readable JSON reports");

    std::string path;
    std::optional<std::string> out_csv;
    std::string out_arg;

    auto* analyze = app.add_subcommand("analyze", "Fredholm report for a problem file");
    analyze->add_option("file", path, "problem definition file")->required();

    auto* solve = app.add_subcommand("solve", "solve the problem and dump samples");
    solve->add_option("file", path, "problem definition file")->required();
    auto* solve_out = solve->add_option("--out", out_arg, "CSV output path");

    auto* converge = app.add_subcommand("converge", "run the limit-theorem harness");
    converge->add_option("file", path, "problem definition file")->required();
    auto* converge_out = converge->add_option("--out", out_arg, "CSV output path");

    auto* selftest = app.add_subcommand("selftest", "run the built-in oracle suite");
    double tol_scale = 1.0;
    selftest->add_option("--tol-scale", tol_scale,
                         "scale factor applied to every oracle tolerance");

    CLI11_PARSE(app, argc, argv);

    if (n_opt->count() > 0) flags.n_steps = n_steps_arg;
    if (tol_opt->count() > 0) flags.rank_tol = rank_tol_arg;
    if (solve_out->count() > 0 || converge_out->count() > 0) out_csv = out_arg;

    try {
        if (app.got_subcommand(analyze)) return run_analyze(path, flags);
        if (app.got_subcommand(solve)) return run_solve(path, flags, out_csv);
        if (app.got_subcommand(converge)) return run_converge(path, flags, out_csv);
        if (app.got_subcommand(selftest)) {
            const auto results = fredbvp::run_selftest(tol_scale);
            const int failures = fredbvp::print_selftest(std::cout, results);
            return failures == 0 ? kExitOk : 1;
        }
    } catch (const fredbvp::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const fredbvp::SingularFundamentalMatrix& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const fredbvp::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

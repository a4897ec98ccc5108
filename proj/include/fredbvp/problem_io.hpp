#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "fredbvp/limits.hpp"
#include "fredbvp/solver.hpp"

namespace fredbvp {

/// A parsed problem-definition file: the problem itself, the requested grid,
/// and the optional convergence-family section.
struct ProblemDocument {
    BvpProblem problem;
    std::size_t n_steps = kDefaultSteps;
    std::optional<PerturbationFamily> family;
};

ProblemDocument parse_problem_text(const std::string& text);
ProblemDocument parse_problem_file(const std::string& path);

nlohmann::json serialize_problem(const ProblemDocument& doc);

/// FNV-1a over the canonical serialized form; echoed in reports.
std::string problem_hash(const ProblemDocument& doc);

/// Everything a report can carry; solve-only fields stay unset for analyze.
struct ReportData {
    std::string hash;
    CharacteristicMatrix char_matrix;
    FredholmReport report;
    std::optional<Classification> classification;
    bool underdetermined = false;
    std::optional<double> least_squares_residual;
    std::optional<double> ode_residual;
    std::optional<double> boundary_residual;
    int kernel_dim = 0;
};

nlohmann::json report_to_json(const ReportData& data);
std::string render_report_text(const ReportData& data);

void write_solution_csv(std::ostream& out, const BvpSolution& solution, const Grid& grid);
void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace);

}  // namespace fredbvp

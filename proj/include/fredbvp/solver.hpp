#pragma once

#include <optional>
#include <vector>

#include "fredbvp/boundary.hpp"
#include "fredbvp/characteristic.hpp"
#include "fredbvp/coefficient.hpp"
#include "fredbvp/types.hpp"

namespace fredbvp {

/// Full problem data: y' + A(t) y = f on (a, b), B y = c.
struct BvpProblem {
    Interval interval;
    Eigen::Index m = 0;
    int s = 1;
    CoefficientSpec A;
    CoefficientSpec f;
    BoundaryOperator B;
    Vector c;

    void validate() const;
    Eigen::Index r() const { return B.r(); }
};

enum class Classification {
    Unique,
    Underdetermined,
    SolvableNonUnique,
    Unsolvable,
};

const char* to_string(Classification c);

/// Result of reducing By = c through the superposition y = Y q + y_p to the
/// linear system M q = c - B y_p, solved in the least-squares sense. The
/// returned q is the minimum-norm representative; kernel_basis spans the
/// homogeneous solutions Y * ker(M).
struct BvpSolution {
    Classification classification = Classification::Unsolvable;
    /// r < m with full row rank; attached alongside SolvableNonUnique.
    bool underdetermined = false;
    std::optional<GridVectorFunction> particular;
    std::vector<GridVectorFunction> kernel_basis;
    double residual_norm = 0.0;     // ||M q + B y_p - c||
    double solvability_tol = 0.0;   // 1e-6 * (1 + ||c||)
    Vector q;                       // minimum-norm coordinate vector
    CharacteristicMatrix char_matrix;
    FredholmReport report;
};

BvpSolution solve(const BvpProblem& problem, const Grid& grid,
                  std::optional<double> rank_tol = std::nullopt);

/// Independent residuals: the ODE residual differentiates the value-level
/// samples with 5-point stencils (it does not reuse the stored stack), the
/// boundary residual re-applies B.
struct SolutionDiagnostics {
    std::optional<double> ode_residual;
    std::optional<double> boundary_residual;
    /// Per kernel element: (ODE residual of Ly = 0, ||B y||).
    std::vector<std::pair<double, double>> kernel_residuals;
};

SolutionDiagnostics verify_solution(const BvpProblem& problem, const BvpSolution& solution,
                                    const Grid& grid);

}  // namespace fredbvp

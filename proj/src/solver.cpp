#include "fredbvp/solver.hpp"

#include <cmath>

#include "fredbvp/ode.hpp"
#include "fredbvp/stencil.hpp"

namespace fredbvp {

namespace {

constexpr double kSolvabilityFactor = 1e-6;

// ODE residual from the value-level samples alone: differentiate them with
// 5-point stencils and compare against f - A y node-wise (max norm).
double stencil_ode_residual(const GridMatrixFunction& A, const GridVectorFunction& y,
                            const GridVectorFunction* f) {
    const std::vector<Vector> dy =
        fd::differentiate_samples(y.level(0), y.grid().step(), 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < y.grid().node_count(); ++i) {
        Vector res = dy[i] + A.at(0, i) * y.at(0, i);
        if (f != nullptr) res -= f->at(0, i);
        worst = std::max(worst, res.lpNorm<Eigen::Infinity>());
    }
    return worst;
}

}  // namespace

const char* to_string(Classification c) {
    switch (c) {
        case Classification::Unique: return "unique";
        case Classification::Underdetermined: return "underdetermined";
        case Classification::SolvableNonUnique: return "solvable_non_unique";
        case Classification::Unsolvable: return "unsolvable";
    }
    return "unknown";
}

void BvpProblem::validate() const {
    if (m <= 0) throw InvalidProblem("system dimension m must be positive");
    if (s < 1 || s > kMaxSmoothness) {
        throw InvalidProblem("smoothness s must lie in 1.." + std::to_string(kMaxSmoothness));
    }
    if (A.rows() != m || A.cols() != m) throw InvalidProblem("A must be m x m");
    if (!f.is_vector_shaped() || f.rows() != m) throw InvalidProblem("f must be m x 1");
    if (B.m() != m) throw InvalidProblem("boundary operator dimension mismatch");
    if (B.s() > s) throw InvalidProblem("boundary operator smoothness exceeds problem s");
    if (!(B.interval() == interval)) {
        throw InvalidProblem("boundary operator interval differs from problem interval");
    }
    if (c.size() != B.r()) throw InvalidProblem("boundary data c must have r entries");
}

BvpSolution solve(const BvpProblem& problem, const Grid& grid,
                  std::optional<double> rank_tol) {
    problem.validate();
    if (!(grid.interval() == problem.interval)) {
        throw GridMismatch("grid interval differs from problem interval");
    }
    const int s = problem.s;

    const GridMatrixFunction A = problem.A.materialize(grid, s - 1);
    const GridVectorFunction f = materialize_vector(problem.f, grid, s - 1);
    const FundamentalMatrix fundamental = solve_fundamental(A, s);
    const ParticularSolution particular = solve_particular(A, f, s);

    BvpSolution out;
    out.char_matrix = analyze_matrix(problem.B.apply_to_matrix(fundamental.Y), rank_tol);
    out.report = fredholm_report(out.char_matrix);

    const Vector rhs = problem.c - problem.B.apply(particular.y_p);
    const Eigen::Index m = problem.m;

    Eigen::JacobiSVD<Matrix> svd(out.char_matrix.M,
                                 Eigen::ComputeFullU | Eigen::ComputeFullV);
    const RealVector& sigma = svd.singularValues();
    const int rank = out.char_matrix.rank;

    // Minimum-norm least-squares coordinates through the truncated SVD.
    Vector projected = svd.matrixU().adjoint() * rhs;
    Vector scaled = Vector::Zero(m);
    for (int i = 0; i < rank; ++i) {
        scaled(i) = projected(i) / sigma(i);
    }
    out.q = svd.matrixV() * scaled;
    out.residual_norm = (out.char_matrix.M * out.q - rhs).norm();
    out.solvability_tol = kSolvabilityFactor * (1.0 + problem.c.norm());

    for (Eigen::Index i = rank; i < m; ++i) {
        out.kernel_basis.push_back(
            apply_to_constant_vector(fundamental.Y, svd.matrixV().col(i)));
    }

    const bool solvable = out.residual_norm <= out.solvability_tol;
    out.underdetermined = problem.r() < m && rank == static_cast<int>(problem.r());
    if (!solvable) {
        out.classification = Classification::Unsolvable;
    } else if (rank == static_cast<int>(m)) {
        out.classification = Classification::Unique;
    } else {
        out.classification = Classification::SolvableNonUnique;
    }

    if (solvable) {
        GridVectorFunction y = apply_to_constant_vector(fundamental.Y, out.q);
        y.add_scaled(particular.y_p, Complex(1.0, 0.0));
        out.particular = std::move(y);
    }
    return out;
}

SolutionDiagnostics verify_solution(const BvpProblem& problem, const BvpSolution& solution,
                                    const Grid& grid) {
    SolutionDiagnostics diag;
    const GridMatrixFunction A = problem.A.materialize(grid, 0);
    const GridVectorFunction f = materialize_vector(problem.f, grid, 0);

    if (solution.particular.has_value()) {
        diag.ode_residual = stencil_ode_residual(A, *solution.particular, &f);
        const Vector boundary = problem.B.apply(*solution.particular) - problem.c;
        diag.boundary_residual = boundary.norm();
    }
    for (const auto& y : solution.kernel_basis) {
        const double ode_res = stencil_ode_residual(A, y, nullptr);
        const double boundary_res = problem.B.apply(y).norm();
        diag.kernel_residuals.emplace_back(ode_res, boundary_res);
    }
    return diag;
}

}  // namespace fredbvp

#include "fredbvp/ode.hpp"

#include <array>
#include <cmath>

namespace fredbvp {

namespace {

void check_smoothness(int s) {
    if (s < 1) throw InvalidProblem("smoothness order s must be at least 1");
    if (s > kMaxSmoothness) {
        throw UnsupportedDerivativeOrder("smoothness order capped at " +
                                         std::to_string(kMaxSmoothness));
    }
}

// Binomial coefficients C(k, i) for k <= kMaxSmoothness.
double binomial(int k, int i) {
    static const auto table = [] {
        std::array<std::array<double, kMaxSmoothness + 1>, kMaxSmoothness + 1> c{};
        for (int n = 0; n <= kMaxSmoothness; ++n) {
            c[n][0] = 1.0;
            for (int j = 1; j <= n; ++j) {
                c[n][j] = c[n - 1][j - 1] + (j <= n - 1 ? c[n - 1][j] : 0.0);
            }
        }
        return c;
    }();
    return table[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
}

double max_node_norm(const GridMatrixFunction& A) {
    double worst = 0.0;
    for (std::size_t i = 0; i < A.grid().node_count(); ++i) {
        worst = std::max(worst, A.at(0, i).norm());
    }
    return worst;
}

// RK4 march for state' = rhs(t, state); A is read at half-steps through
// 5-point interpolation so the coefficient stays grid-based.
template <typename StateT, typename Rhs>
std::vector<StateT> rk4_march(const Grid& grid, StateT initial, Rhs rhs) {
    const double h = grid.step();
    std::vector<StateT> values;
    values.reserve(grid.node_count());
    values.push_back(std::move(initial));
    for (std::size_t i = 0; i < grid.n_steps(); ++i) {
        const double t = grid.node(i);
        const StateT& y = values.back();
        const StateT k1 = rhs(t, i, true, y);
        const StateT k2 = rhs(t + h / 2.0, i, false, StateT(y + (h / 2.0) * k1));
        const StateT k3 = rhs(t + h / 2.0, i, false, StateT(y + (h / 2.0) * k2));
        const StateT k4 = rhs(grid.node(i + 1), i + 1, true, StateT(y + h * k3));
        values.push_back(y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }
    return values;
}

}  // namespace

GridMatrixFunction derivative_stack(const GridMatrixFunction& A,
                                    const GridMatrixFunction& Y, int s) {
    check_smoothness(s);
    if (A.max_derivative() < s - 1) {
        throw UnsupportedDerivativeOrder("coefficient stack too short for requested s");
    }
    const std::size_t nodes = Y.grid().node_count();
    std::vector<std::vector<Matrix>> levels;
    levels.reserve(static_cast<std::size_t>(s) + 1);
    levels.push_back(Y.level(0));
    for (int k = 0; k < s; ++k) {
        std::vector<Matrix> next;
        next.reserve(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            Matrix acc = Matrix::Zero(Y.rows(), Y.cols());
            for (int j = 0; j <= k; ++j) {
                acc -= binomial(k, j) *
                       (A.at(j, i) * levels[static_cast<std::size_t>(k - j)][i]);
            }
            next.push_back(std::move(acc));
        }
        levels.push_back(std::move(next));
    }
    return GridMatrixFunction(Y.grid(), std::move(levels));
}

GridVectorFunction derivative_stack(const GridMatrixFunction& A,
                                    const GridVectorFunction& y,
                                    const GridVectorFunction& f, int s) {
    check_smoothness(s);
    if (A.max_derivative() < s - 1 || f.max_derivative() < s - 1) {
        throw UnsupportedDerivativeOrder("coefficient stacks too short for requested s");
    }
    const std::size_t nodes = y.grid().node_count();
    std::vector<std::vector<Vector>> levels;
    levels.reserve(static_cast<std::size_t>(s) + 1);
    levels.push_back(y.level(0));
    for (int k = 0; k < s; ++k) {
        std::vector<Vector> next;
        next.reserve(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            Vector acc = f.at(k, i);
            for (int j = 0; j <= k; ++j) {
                acc -= binomial(k, j) *
                       (A.at(j, i) * levels[static_cast<std::size_t>(k - j)][i]);
            }
            next.push_back(std::move(acc));
        }
        levels.push_back(std::move(next));
    }
    return GridVectorFunction(y.grid(), std::move(levels));
}

FundamentalMatrix solve_fundamental(const GridMatrixFunction& A, int s) {
    check_smoothness(s);
    if (A.rows() != A.cols()) throw InvalidProblem("coefficient matrix must be square");
    if (A.max_derivative() < s - 1) {
        throw UnsupportedDerivativeOrder("coefficient stack too short for requested s");
    }
    const Eigen::Index m = A.rows();
    const Grid& grid = A.grid();

    auto rhs = [&A](double t, std::size_t node, bool on_node, const Matrix& Y) -> Matrix {
        const Matrix At = on_node ? A.at(0, node) : A.interpolate(t, 0);
        return -(At * Y);
    };
    std::vector<Matrix> values = rk4_march<Matrix>(grid, Matrix::Identity(m, m), rhs);

    GridMatrixFunction Y0(grid, {std::move(values)});
    GridMatrixFunction Y = derivative_stack(A, Y0, s);

    // Liouville keeps the true determinant above exp(-(b-a) sup||A||); the
    // floor only guards against numerical collapse or blow-up.
    const double floor =
        1e-12 * std::exp(-grid.interval().length() * max_node_norm(A));
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        const double det = std::abs(Y.at(0, i).determinant());
        if (!std::isfinite(det) || !(det > floor)) {
            throw SingularFundamentalMatrix(
                "fundamental matrix lost invertibility at node " + std::to_string(i) +
                " (integration blow-up or too-coarse grid)");
        }
    }
    return FundamentalMatrix{std::move(Y)};
}

ParticularSolution solve_particular(const GridMatrixFunction& A,
                                    const GridVectorFunction& f, int s) {
    check_smoothness(s);
    if (!(A.grid() == f.grid())) throw GridMismatch("coefficient and right side grids differ");
    if (A.rows() != A.cols() || A.cols() != f.rows()) {
        throw GridMismatch("coefficient and right side shapes disagree");
    }
    if (A.max_derivative() < s - 1 || f.max_derivative() < s - 1) {
        throw UnsupportedDerivativeOrder("stacks too short for requested s");
    }
    const Grid& grid = A.grid();

    auto rhs = [&A, &f](double t, std::size_t node, bool on_node,
                        const Vector& y) -> Vector {
        if (on_node) return f.at(0, node) - A.at(0, node) * y;
        return f.interpolate(t, 0) - A.interpolate(t, 0) * y;
    };
    std::vector<Vector> values =
        rk4_march<Vector>(grid, Vector::Zero(f.rows()), rhs);

    GridVectorFunction y0(grid, {std::move(values)});
    return ParticularSolution{derivative_stack(A, y0, f, s)};
}

}  // namespace fredbvp

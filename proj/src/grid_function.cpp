#include "fredbvp/grid_function.hpp"

namespace fredbvp {

GridVectorFunction column(const GridMatrixFunction& Y, Eigen::Index j) {
    if (j < 0 || j >= Y.cols()) {
        throw InvalidProblem("column index out of range");
    }
    std::vector<std::vector<Vector>> levels(static_cast<std::size_t>(Y.max_derivative()) + 1);
    for (int d = 0; d <= Y.max_derivative(); ++d) {
        auto& out = levels[static_cast<std::size_t>(d)];
        out.reserve(Y.grid().node_count());
        for (std::size_t i = 0; i < Y.grid().node_count(); ++i) {
            out.push_back(Y.at(d, i).col(j));
        }
    }
    return GridVectorFunction(Y.grid(), std::move(levels));
}

GridVectorFunction apply_to_constant_vector(const GridMatrixFunction& Y, const Vector& q) {
    if (q.size() != Y.cols()) {
        throw InvalidProblem("vector length does not match matrix columns");
    }
    std::vector<std::vector<Vector>> levels(static_cast<std::size_t>(Y.max_derivative()) + 1);
    for (int d = 0; d <= Y.max_derivative(); ++d) {
        auto& out = levels[static_cast<std::size_t>(d)];
        out.reserve(Y.grid().node_count());
        for (std::size_t i = 0; i < Y.grid().node_count(); ++i) {
            out.push_back(Y.at(d, i) * q);
        }
    }
    return GridVectorFunction(Y.grid(), std::move(levels));
}

double graded_sup_norm(const GridVectorFunction& fun, int l) {
    double total = 0.0;
    for (int d = 0; d <= l; ++d) {
        Eigen::VectorXd comp_sup = Eigen::VectorXd::Zero(fun.rows());
        for (std::size_t i = 0; i < fun.grid().node_count(); ++i) {
            comp_sup = comp_sup.cwiseMax(fun.at(d, i).cwiseAbs());
        }
        total += comp_sup.sum();
    }
    return total;
}

double graded_sup_norm(const GridMatrixFunction& fun, int l) {
    double worst = 0.0;
    for (Eigen::Index j = 0; j < fun.cols(); ++j) {
        double total = 0.0;
        for (int d = 0; d <= l; ++d) {
            Eigen::VectorXd comp_sup = Eigen::VectorXd::Zero(fun.rows());
            for (std::size_t i = 0; i < fun.grid().node_count(); ++i) {
                comp_sup = comp_sup.cwiseMax(fun.at(d, i).col(j).cwiseAbs());
            }
            total += comp_sup.sum();
        }
        worst = std::max(worst, total);
    }
    return worst;
}

double max_level_diff_norm(const GridMatrixFunction& x, const GridMatrixFunction& y,
                           int l) {
    if (!(x.grid() == y.grid())) throw GridMismatch("norm of functions on different grids");
    if (x.rows() != y.rows() || x.cols() != y.cols()) {
        throw GridMismatch("norm of functions with different shapes");
    }
    double worst = 0.0;
    for (int d = 0; d <= l; ++d) {
        for (std::size_t i = 0; i < x.grid().node_count(); ++i) {
            worst = std::max(worst, (x.at(d, i) - y.at(d, i)).norm());
        }
    }
    return worst;
}

}  // namespace fredbvp

#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "fredbvp/types.hpp"

namespace fredbvp {

/// Dense-grid samples of a vector- or matrix-valued function together with a
/// stack of derivatives: levels_[d][i] holds the d-th derivative at node i.
/// Immutable after construction except for the named linear-update helpers;
/// all samples share one shape.
template <typename ValueT>
class GridFunction {
public:
    GridFunction(Grid grid, std::vector<std::vector<ValueT>> levels)
        : grid_(std::move(grid)), levels_(std::move(levels)) {
        if (levels_.empty()) {
            throw InvalidProblem("grid function needs at least the value level");
        }
        for (const auto& level : levels_) {
            if (level.size() != grid_.node_count()) {
                throw InvalidProblem("derivative level sample count does not match grid");
            }
            for (const auto& v : level) {
                if (v.rows() != levels_[0][0].rows() || v.cols() != levels_[0][0].cols()) {
                    throw InvalidProblem("inconsistent sample shapes in grid function");
                }
            }
        }
    }

    static GridFunction zeros(const Grid& grid, Eigen::Index rows, Eigen::Index cols,
                              int d_max) {
        std::vector<std::vector<ValueT>> levels(
            static_cast<std::size_t>(d_max) + 1,
            std::vector<ValueT>(grid.node_count(), ValueT::Zero(rows, cols)));
        return GridFunction(grid, std::move(levels));
    }

    const Grid& grid() const { return grid_; }
    int max_derivative() const { return static_cast<int>(levels_.size()) - 1; }
    Eigen::Index rows() const { return levels_[0][0].rows(); }
    Eigen::Index cols() const { return levels_[0][0].cols(); }

    const ValueT& at(int deriv, std::size_t node) const {
        check_level(deriv);
        return levels_[static_cast<std::size_t>(deriv)][node];
    }

    ValueT& at(int deriv, std::size_t node) {
        check_level(deriv);
        return levels_[static_cast<std::size_t>(deriv)][node];
    }

    const std::vector<ValueT>& level(int deriv) const {
        check_level(deriv);
        return levels_[static_cast<std::size_t>(deriv)];
    }

    /// 5-point Lagrange interpolation of the stored derivative-level samples.
    /// Exact (bit-exact) when t coincides with a grid node.
    ValueT interpolate(double t, int deriv = 0) const {
        check_level(deriv);
        if (!grid_.interval().contains(t)) {
            throw PointOutsideInterval("interpolation point outside [a, b]");
        }
        t = grid_.interval().clamp(t);
        const auto& samples = levels_[static_cast<std::size_t>(deriv)];
        const std::size_t nearest = grid_.nearest_node(t);
        if (t == grid_.node(nearest)) {
            return samples[nearest];
        }
        const long long last_start = static_cast<long long>(grid_.n_steps()) - 4;
        long long i0 = static_cast<long long>(nearest) - 2;
        i0 = std::clamp<long long>(i0, 0, last_start);
        const auto start = static_cast<std::size_t>(i0);

        double w[5];
        for (int p = 0; p < 5; ++p) {
            double num = 1.0;
            double den = 1.0;
            const double xp = grid_.node(start + static_cast<std::size_t>(p));
            for (int q = 0; q < 5; ++q) {
                if (q == p) continue;
                const double xq = grid_.node(start + static_cast<std::size_t>(q));
                num *= t - xq;
                den *= xp - xq;
            }
            w[p] = num / den;
        }
        ValueT out = w[0] * samples[start];
        for (int p = 1; p < 5; ++p) {
            out += w[p] * samples[start + static_cast<std::size_t>(p)];
        }
        return out;
    }

    /// In-place this += scale * other, level by level (shared levels only).
    void add_scaled(const GridFunction& other, Complex scale) {
        if (!(grid_ == other.grid_)) throw GridMismatch("add_scaled: different grids");
        if (rows() != other.rows() || cols() != other.cols()) {
            throw GridMismatch("add_scaled: different shapes");
        }
        const int d = std::min(max_derivative(), other.max_derivative());
        for (int lev = 0; lev <= d; ++lev) {
            auto& dst = levels_[static_cast<std::size_t>(lev)];
            const auto& src = other.levels_[static_cast<std::size_t>(lev)];
            for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += scale * src[i];
        }
    }

    GridFunction truncated(int d_max) const {
        check_level(d_max);
        std::vector<std::vector<ValueT>> levels(levels_.begin(),
                                                levels_.begin() + d_max + 1);
        return GridFunction(grid_, std::move(levels));
    }

private:
    void check_level(int deriv) const {
        if (deriv < 0 || deriv > max_derivative()) {
            throw UnsupportedDerivativeOrder("derivative level " + std::to_string(deriv) +
                                             " not stored (d_max = " +
                                             std::to_string(max_derivative()) + ")");
        }
    }

    Grid grid_;
    std::vector<std::vector<ValueT>> levels_;
};

using GridVectorFunction = GridFunction<Vector>;
using GridMatrixFunction = GridFunction<Matrix>;

/// Column j of a matrix function, with the full derivative stack.
GridVectorFunction column(const GridMatrixFunction& Y, Eigen::Index j);

/// The function t -> Y(t) * q, with the full derivative stack.
GridVectorFunction apply_to_constant_vector(const GridMatrixFunction& Y, const Vector& q);

/// Node-wise sum of two functions with coefficients (levels shared by both).
template <typename ValueT>
GridFunction<ValueT> linear_combination(const GridFunction<ValueT>& x, Complex cx,
                                        const GridFunction<ValueT>& y, Complex cy) {
    if (!(x.grid() == y.grid())) throw GridMismatch("linear_combination: different grids");
    const int d = std::min(x.max_derivative(), y.max_derivative());
    std::vector<std::vector<ValueT>> levels(static_cast<std::size_t>(d) + 1);
    for (int lev = 0; lev <= d; ++lev) {
        auto& out = levels[static_cast<std::size_t>(lev)];
        out.reserve(x.grid().node_count());
        for (std::size_t i = 0; i < x.grid().node_count(); ++i) {
            out.push_back(cx * x.at(lev, i) + cy * y.at(lev, i));
        }
    }
    return GridFunction<ValueT>(x.grid(), std::move(levels));
}

/// Grid realization of the C^(l) norm ||x||_(l) = sum_{d<=l} ||x^(d)||_C,
/// with the vector norm taken as the sum of component sup-norms and the
/// matrix norm as the max over columns. Diagnostic only: values between
/// nodes are not controlled.
double graded_sup_norm(const GridVectorFunction& fun, int l);
double graded_sup_norm(const GridMatrixFunction& fun, int l);

/// max over levels 0..l of the max node-wise Frobenius norm of (x - y).
double max_level_diff_norm(const GridMatrixFunction& x, const GridMatrixFunction& y, int l);

}  // namespace fredbvp

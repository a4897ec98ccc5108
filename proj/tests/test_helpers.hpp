#pragma once

#include <functional>
#include <vector>

#include "fredbvp/grid_function.hpp"

namespace test_helpers {

using fredbvp::Complex;
using fredbvp::Grid;
using fredbvp::GridMatrixFunction;
using fredbvp::GridVectorFunction;
using fredbvp::Matrix;
using fredbvp::Vector;

/// Level-0..d sampling of analytic derivative callables (one per level).
inline GridVectorFunction sample_vector(
    const Grid& grid, const std::vector<std::function<Vector(double)>>& levels) {
    std::vector<std::vector<Vector>> data(levels.size());
    for (std::size_t d = 0; d < levels.size(); ++d) {
        data[d].reserve(grid.node_count());
        for (std::size_t i = 0; i < grid.node_count(); ++i) {
            data[d].push_back(levels[d](grid.node(i)));
        }
    }
    return GridVectorFunction(grid, std::move(data));
}

inline GridVectorFunction sample_scalar(
    const Grid& grid, const std::vector<std::function<double(double)>>& levels) {
    std::vector<std::function<Vector(double)>> wrapped;
    for (const auto& fn : levels) {
        wrapped.emplace_back(
            [fn](double t) { return Vector::Constant(1, Complex(fn(t), 0.0)); });
    }
    return sample_vector(grid, wrapped);
}

inline GridMatrixFunction sample_matrix(
    const Grid& grid, const std::vector<std::function<Matrix(double)>>& levels) {
    std::vector<std::vector<Matrix>> data(levels.size());
    for (std::size_t d = 0; d < levels.size(); ++d) {
        data[d].reserve(grid.node_count());
        for (std::size_t i = 0; i < grid.node_count(); ++i) {
            data[d].push_back(levels[d](grid.node(i)));
        }
    }
    return GridMatrixFunction(grid, std::move(data));
}

}  // namespace test_helpers

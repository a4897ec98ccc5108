#include "fredbvp/coefficient.hpp"

#include <utility>

#include "fredbvp/stencil.hpp"

namespace fredbvp {

CoefficientSpec CoefficientSpec::constant(Matrix value) {
    if (value.rows() == 0 || value.cols() == 0) {
        throw InvalidProblem("constant coefficient must be non-empty");
    }
    CoefficientSpec spec(Kind::ConstantMatrix, value.rows(), value.cols());
    spec.coeffs_.push_back(std::move(value));
    return spec;
}

CoefficientSpec CoefficientSpec::polynomial(std::vector<Matrix> coeffs) {
    if (coeffs.empty()) {
        throw InvalidProblem("polynomial coefficient needs at least one matrix");
    }
    for (const auto& c : coeffs) {
        if (c.rows() != coeffs.front().rows() || c.cols() != coeffs.front().cols()) {
            throw InvalidProblem("polynomial coefficients must share one shape");
        }
    }
    CoefficientSpec spec(Kind::MatrixPolynomialInT, coeffs.front().rows(),
                         coeffs.front().cols());
    spec.coeffs_ = std::move(coeffs);
    return spec;
}

CoefficientSpec CoefficientSpec::sampled(Eigen::Index rows, Eigen::Index cols,
                                         Sampler sampler, int d_max_achievable) {
    if (rows <= 0 || cols <= 0 || !sampler) {
        throw InvalidProblem("sampled coefficient needs a shape and a sampler");
    }
    CoefficientSpec spec(Kind::SampledWithFiniteDifferenceDerivatives, rows, cols);
    spec.sampler_ = std::move(sampler);
    spec.sampled_d_max_ = std::min(d_max_achievable, 2);
    return spec;
}

GridMatrixFunction CoefficientSpec::materialize(const Grid& grid, int d_max) const {
    if (d_max < 0) throw UnsupportedDerivativeOrder("d_max must be non-negative");
    const std::size_t nodes = grid.node_count();
    std::vector<std::vector<Matrix>> levels;
    levels.reserve(static_cast<std::size_t>(d_max) + 1);

    switch (kind_) {
        case Kind::ConstantMatrix: {
            levels.emplace_back(nodes, coeffs_.front());
            for (int d = 1; d <= d_max; ++d) {
                levels.emplace_back(nodes, Matrix::Zero(rows_, cols_));
            }
            break;
        }
        case Kind::MatrixPolynomialInT: {
            for (int d = 0; d <= d_max; ++d) {
                std::vector<Matrix> level;
                level.reserve(nodes);
                for (std::size_t i = 0; i < nodes; ++i) {
                    const double t = grid.node(i);
                    Matrix value = Matrix::Zero(rows_, cols_);
                    double falling = 1.0;  // k! / (k-d)! accumulated below
                    double t_pow = 1.0;
                    // value = sum_{k >= d} coeffs[k] * k!/(k-d)! * t^{k-d}
                    for (std::size_t k = static_cast<std::size_t>(d); k < coeffs_.size();
                         ++k) {
                        falling = 1.0;
                        for (int j = 0; j < d; ++j) {
                            falling *= static_cast<double>(k - static_cast<std::size_t>(j));
                        }
                        t_pow = std::pow(t, static_cast<double>(k) - d);
                        value += coeffs_[k] * (falling * t_pow);
                    }
                    level.push_back(std::move(value));
                }
                levels.push_back(std::move(level));
            }
            break;
        }
        case Kind::SampledWithFiniteDifferenceDerivatives: {
            if (d_max > sampled_d_max_) {
                throw UnsupportedDerivativeOrder(
                    "sampled coefficient supports derivatives up to " +
                    std::to_string(sampled_d_max_));
            }
            std::vector<Matrix> base;
            base.reserve(nodes);
            for (std::size_t i = 0; i < nodes; ++i) {
                Matrix v = sampler_(grid.node(i));
                if (v.rows() != rows_ || v.cols() != cols_) {
                    throw InvalidProblem("sampler returned a wrongly shaped matrix");
                }
                base.push_back(std::move(v));
            }
            levels.push_back(base);
            for (int d = 1; d <= d_max; ++d) {
                levels.push_back(fd::differentiate_samples(base, grid.step(), d));
            }
            break;
        }
    }
    return GridMatrixFunction(grid, std::move(levels));
}

GridMatrixFunction materialize(const CoefficientSpec& spec, const Grid& grid, int d_max) {
    return spec.materialize(grid, d_max);
}

GridVectorFunction materialize_vector(const CoefficientSpec& spec, const Grid& grid,
                                      int d_max) {
    if (!spec.is_vector_shaped()) {
        throw InvalidProblem("vector coefficient must have a single column");
    }
    const GridMatrixFunction mat = spec.materialize(grid, d_max);
    std::vector<std::vector<Vector>> levels(static_cast<std::size_t>(d_max) + 1);
    for (int d = 0; d <= d_max; ++d) {
        auto& out = levels[static_cast<std::size_t>(d)];
        out.reserve(grid.node_count());
        for (std::size_t i = 0; i < grid.node_count(); ++i) {
            out.push_back(mat.at(d, i).col(0));
        }
    }
    return GridVectorFunction(grid, std::move(levels));
}

}  // namespace fredbvp

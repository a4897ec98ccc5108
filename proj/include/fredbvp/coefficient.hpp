#pragma once

#include <functional>
#include <vector>

#include "fredbvp/grid_function.hpp"
#include "fredbvp/types.hpp"

namespace fredbvp {

/// Concrete input encoding of a matrix- or vector-valued coefficient
/// (vector-valued means cols == 1). Analytic kinds carry exact derivative
/// stacks; the sampled kind differentiates with 5-point stencils and is
/// capped at two derivative levels.
class CoefficientSpec {
public:
    enum class Kind {
        ConstantMatrix,
        MatrixPolynomialInT,
        SampledWithFiniteDifferenceDerivatives,
    };

    using Sampler = std::function<Matrix(double)>;

    static CoefficientSpec constant(Matrix value);
    /// A(t) = sum_k coeffs[k] * t^k; all coefficients share one shape.
    static CoefficientSpec polynomial(std::vector<Matrix> coeffs);
    static CoefficientSpec sampled(Eigen::Index rows, Eigen::Index cols, Sampler sampler,
                                   int d_max_achievable = 2);

    Kind kind() const { return kind_; }
    Eigen::Index rows() const { return rows_; }
    Eigen::Index cols() const { return cols_; }
    bool is_vector_shaped() const { return cols_ == 1; }

    const Matrix& constant_value() const { return coeffs_.front(); }
    const std::vector<Matrix>& poly_coeffs() const { return coeffs_; }
    int sampled_d_max() const { return sampled_d_max_; }

    GridMatrixFunction materialize(const Grid& grid, int d_max) const;

private:
    CoefficientSpec(Kind kind, Eigen::Index rows, Eigen::Index cols)
        : kind_(kind), rows_(rows), cols_(cols) {}

    Kind kind_;
    Eigen::Index rows_;
    Eigen::Index cols_;
    std::vector<Matrix> coeffs_;  // constant: single entry; polynomial: by power of t
    Sampler sampler_;
    int sampled_d_max_ = 2;
};

GridMatrixFunction materialize(const CoefficientSpec& spec, const Grid& grid, int d_max);

/// Materialize a vector-shaped (m x 1) spec as a vector function.
GridVectorFunction materialize_vector(const CoefficientSpec& spec, const Grid& grid,
                                      int d_max);

}  // namespace fredbvp

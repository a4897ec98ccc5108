#pragma once

#include <optional>

#include "fredbvp/boundary.hpp"
#include "fredbvp/coefficient.hpp"
#include "fredbvp/ode.hpp"
#include "fredbvp/types.hpp"

namespace fredbvp {

/// The r x m matrix [BY] together with its tolerance-based rank analysis.
/// Columns are indexed by the m columns of Y, rows by the r boundary
/// functionals.
struct CharacteristicMatrix {
    Matrix M;
    RealVector singular_values;  // non-increasing, length min(r, m)
    double rank_tolerance = 0.0;
    int rank = 0;
};

/// Fredholm data of the problem read off the characteristic matrix:
/// dim ker = m - rank, dim coker = r - rank, index = m - r,
/// invertible iff r = m and the kernel is trivial.
struct FredholmReport {
    Eigen::Index m = 0;
    Eigen::Index r = 0;
    int rank = 0;
    int dim_ker = 0;
    int dim_coker = 0;
    int index = 0;
    bool invertible = false;
    /// Smallest kept over largest discarded singular value; a gap below 10
    /// marks the integer rank as numerically unstable.
    double spectral_gap = 0.0;
    bool rank_unstable = false;
};

constexpr double kRankUnstableGap = 10.0;

/// Rank via SVD. Default tolerance: max(r, m) * sigma_max * 1e-10.
std::pair<int, RealVector> numeric_rank(const Matrix& M,
                                        std::optional<double> tol = std::nullopt);

/// Attach singular values, tolerance and rank to M.
CharacteristicMatrix analyze_matrix(Matrix M, std::optional<double> tol = std::nullopt);

/// M(L, B) = [BY] for the fundamental matrix of y' + A y = 0.
CharacteristicMatrix characteristic_matrix(const CoefficientSpec& A,
                                           const BoundaryOperator& B, const Grid& grid,
                                           int s,
                                           std::optional<double> tol = std::nullopt);

/// Same, for an already materialized coefficient (stack up to s-1).
CharacteristicMatrix characteristic_matrix(const GridMatrixFunction& A,
                                           const BoundaryOperator& B, int s,
                                           std::optional<double> tol = std::nullopt);

FredholmReport fredholm_report(const CharacteristicMatrix& cm);

}  // namespace fredbvp

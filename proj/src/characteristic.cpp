#include "fredbvp/characteristic.hpp"

#include <cmath>
#include <limits>

namespace fredbvp {

std::pair<int, RealVector> numeric_rank(const Matrix& M, std::optional<double> tol) {
    Eigen::JacobiSVD<Matrix> svd(M);
    RealVector sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double threshold =
        tol.value_or(static_cast<double>(std::max(M.rows(), M.cols())) * sigma_max * 1e-10);
    int rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > threshold) ++rank;
    }
    return {rank, std::move(sigma)};
}

CharacteristicMatrix analyze_matrix(Matrix M, std::optional<double> tol) {
    CharacteristicMatrix cm;
    auto [rank, sigma] = numeric_rank(M, tol);
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    cm.rank_tolerance =
        tol.value_or(static_cast<double>(std::max(M.rows(), M.cols())) * sigma_max * 1e-10);
    cm.M = std::move(M);
    cm.singular_values = std::move(sigma);
    cm.rank = rank;
    return cm;
}

CharacteristicMatrix characteristic_matrix(const GridMatrixFunction& A,
                                           const BoundaryOperator& B, int s,
                                           std::optional<double> tol) {
    const FundamentalMatrix fundamental = solve_fundamental(A, s);
    return analyze_matrix(B.apply_to_matrix(fundamental.Y), tol);
}

CharacteristicMatrix characteristic_matrix(const CoefficientSpec& A,
                                           const BoundaryOperator& B, const Grid& grid,
                                           int s, std::optional<double> tol) {
    if (s < B.max_point_order()) {
        throw InvalidProblem("smoothness s below the highest boundary derivative order");
    }
    return characteristic_matrix(A.materialize(grid, s - 1), B, s, tol);
}

FredholmReport fredholm_report(const CharacteristicMatrix& cm) {
    FredholmReport report;
    report.r = cm.M.rows();
    report.m = cm.M.cols();
    report.rank = cm.rank;
    report.dim_ker = static_cast<int>(report.m) - cm.rank;
    report.dim_coker = static_cast<int>(report.r) - cm.rank;
    report.index = static_cast<int>(report.m) - static_cast<int>(report.r);
    report.invertible = (report.r == report.m) && report.dim_ker == 0;

    // Confidence in the integer rank: smallest kept singular value against the
    // largest discarded one, with the tolerance standing in for an absent side.
    const Eigen::Index count = cm.singular_values.size();
    const double kept =
        cm.rank > 0 ? cm.singular_values(cm.rank - 1) : cm.rank_tolerance;
    const double discarded =
        cm.rank < count ? cm.singular_values(cm.rank) : cm.rank_tolerance;
    report.spectral_gap = discarded == 0.0 ? std::numeric_limits<double>::infinity()
                                           : kept / discarded;
    report.rank_unstable = report.spectral_gap < kRankUnstableGap;
    return report;
}

}  // namespace fredbvp

#include "fredbvp/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "fredbvp/characteristic.hpp"
#include "fredbvp/solver.hpp"

namespace fredbvp {

namespace {

// Scaling-and-squaring Taylor exponential; lives here, outside the RK4 path
// it cross-checks.
Matrix expm_taylor(const Matrix& A) {
    int squarings = 0;
    double norm = A.norm();
    while (norm > 0.5) {
        norm /= 2.0;
        ++squarings;
    }
    const Matrix S = A / std::pow(2.0, squarings);
    Matrix term = Matrix::Identity(A.rows(), A.cols());
    Matrix sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = (S * term) / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) sum = sum * sum;
    return sum;
}

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Matrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = Complex(dist(rng), dist(rng));
    }
    return out;
}

SelftestResult check(const std::string& name, double err, double tol) {
    return SelftestResult{name, err, tol, err <= tol};
}

SelftestResult matrix_exponential_check() {
    const Grid grid(Interval(0.0, 1.0), kDefaultSteps);
    std::mt19937_64 rng(0x5eedbead01ull);
    double worst = 0.0;
    std::vector<Matrix> cases;
    Matrix rotation(2, 2);
    rotation << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 0);
    cases.push_back(rotation);
    cases.push_back(random_matrix(rng, 2, 2));
    cases.push_back(random_matrix(rng, 3, 3));
    for (const auto& A : cases) {
        const auto spec = CoefficientSpec::constant(A);
        const FundamentalMatrix fm = solve_fundamental(spec.materialize(grid, 0), 1);
        const Matrix expected = expm_taylor(-A);
        worst = std::max(worst,
                         (fm.Y.at(0, grid.n_steps()) - expected).cwiseAbs().maxCoeff());
    }
    return check("fundamental matrix vs exponential", worst, 1e-8);
}

SelftestResult one_point_closed_form_check() {
    // Constant A with B y = sum_k alpha_k y^(k)(a): M = sum_k alpha_k (-A)^k.
    const Grid grid(Interval(0.0, 1.0), kDefaultSteps);
    std::mt19937_64 rng(0x5eedbead02ull);
    Matrix A(2, 2);
    A << Complex(0, 0), Complex(1, 0), Complex(-1, 0), Complex(0, 0);

    double worst = 0.0;
    for (Eigen::Index r = 1; r <= 3; ++r) {
        std::vector<BoundaryTerm> terms;
        Matrix expected = Matrix::Zero(r, 2);
        Matrix power = Matrix::Identity(2, 2);  // (-A)^k
        for (int k = 0; k < 3; ++k) {
            const Matrix alpha = random_matrix(rng, r, 2);
            terms.push_back(PointDerivativeTerm{k, 0.0, alpha});
            expected += alpha * power;
            power = power * (-A);
        }
        const BoundaryOperator B(r, 2, 3, std::move(terms), grid.interval());
        const CharacteristicMatrix cm =
            characteristic_matrix(CoefficientSpec::constant(A), B, grid, 3);
        worst = std::max(worst, (cm.M - expected).cwiseAbs().maxCoeff());
    }
    return check("one-point closed form", worst, 1e-7);
}

SelftestResult multipoint_fractional_check() {
    // A = 0 with multipoint Caputo-fractional conditions: the fractional
    // terms annihilate the constant columns of Y = I, so M = sum_j beta_j0.
    const Grid grid(Interval(0.0, 1.0), kDefaultSteps);
    std::mt19937_64 rng(0x5eedbead03ull);
    const Eigen::Index m = 2, r = 2;

    std::vector<BoundaryTerm> terms;
    Matrix expected = Matrix::Zero(r, m);
    const double points[] = {0.0, 0.5};
    for (double point : points) {
        const Matrix beta0 = random_matrix(rng, r, m);
        terms.push_back(PointDerivativeTerm{0, point, beta0});
        expected += beta0;
        terms.push_back(FractionalPointDerivativeTerm{
            0.5, FractionalKind::CaputoRight, point, random_matrix(rng, r, m)});
        terms.push_back(FractionalPointDerivativeTerm{
            1.5, FractionalKind::CaputoRight, point, random_matrix(rng, r, m)});
    }
    const BoundaryOperator B(r, m, 2, std::move(terms), grid.interval());
    const CharacteristicMatrix cm = characteristic_matrix(
        CoefficientSpec::constant(Matrix::Zero(m, m)), B, grid, 2);
    const double err = (cm.M - expected).cwiseAbs().maxCoeff();
    return check("multipoint fractional closed form", err, 1e-4);
}

SelftestResult column_rule_check() {
    // [BY] d = B(Y d) for random polynomial Y, mixed-term B and random d.
    const Grid grid(Interval(0.0, 1.0), 128);
    std::mt19937_64 rng(0x5eedbead04ull);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    const Eigen::Index m = 2, r = 2;
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const CoefficientSpec Y_spec = CoefficientSpec::polynomial(
            {random_matrix(rng, m, m), random_matrix(rng, m, m), random_matrix(rng, m, m)});
        const GridMatrixFunction Y = Y_spec.materialize(grid, 2);

        std::vector<BoundaryTerm> terms;
        terms.push_back(PointDerivativeTerm{1, 0.25, random_matrix(rng, r, m)});
        terms.push_back(IntegralTerm{CoefficientSpec::constant(random_matrix(rng, r, m))});
        terms.push_back(FractionalPointDerivativeTerm{
            0.5, FractionalKind::RiemannLiouvilleRight, 0.5, random_matrix(rng, r, m)});
        const BoundaryOperator B(r, m, 2, std::move(terms), grid.interval());

        const Vector d = random_matrix(rng, m, 1).col(0);
        const Vector lhs = B.apply_to_matrix(Y) * d;
        const Vector rhs = B.apply(apply_to_constant_vector(Y, d));
        const double scale = std::max(1.0, rhs.norm());
        worst = std::max(worst, (lhs - rhs).norm() / scale);
    }
    return check("column rule identity", worst, 1e-10);
}

SelftestResult fractional_closed_forms_check() {
    // Right-sided RL derivative of a constant and of (b-t)^alpha.
    const Grid grid(Interval(0.0, 1.0), kDefaultSteps);
    const double alpha = 0.5;
    const double t_j = 0.25;
    double worst = 0.0;

    std::vector<std::vector<Vector>> constant_levels(
        1, std::vector<Vector>(grid.node_count(), Vector::Constant(1, Complex(2.0, 0.0))));
    const GridVectorFunction constant(grid, std::move(constant_levels));
    const Vector rl_const = fractional_derivative(
        constant, alpha, FractionalKind::RiemannLiouvilleRight, t_j);
    const double expected_const =
        2.0 * std::pow(1.0 - t_j, -alpha) / std::tgamma(1.0 - alpha);
    worst = std::max(worst,
                     std::abs(rl_const(0) - Complex(expected_const, 0.0)) / expected_const);

    std::vector<Vector> power_samples;
    power_samples.reserve(grid.node_count());
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        power_samples.push_back(
            Vector::Constant(1, Complex(std::pow(1.0 - grid.node(i), alpha), 0.0)));
    }
    const GridVectorFunction power(grid, {std::move(power_samples)});
    const Vector rl_power =
        fractional_derivative(power, alpha, FractionalKind::RiemannLiouvilleRight, t_j);
    const double expected_power = std::tgamma(alpha + 1.0);
    worst = std::max(worst,
                     std::abs(rl_power(0) - Complex(expected_power, 0.0)) / expected_power);

    const Vector caputo_const =
        fractional_derivative(constant, alpha, FractionalKind::CaputoRight, t_j);
    worst = std::max(worst, std::abs(caputo_const(0)));
    return check("fractional closed forms", worst, 1e-3);
}

}  // namespace

std::vector<SelftestResult> run_selftest(double tol_scale) {
    std::vector<SelftestResult> results;
    results.push_back(matrix_exponential_check());
    results.push_back(one_point_closed_form_check());
    results.push_back(multipoint_fractional_check());
    results.push_back(column_rule_check());
    results.push_back(fractional_closed_forms_check());
    for (auto& result : results) {
        result.tolerance *= tol_scale;
        result.passed = result.max_error <= result.tolerance;
    }
    return results;
}

int print_selftest(std::ostream& out, const std::vector<SelftestResult>& results) {
    int failures = 0;
    for (const auto& result : results) {
        char line[160];
        std::snprintf(line, sizeof(line), "[%s] %-38s max_error=%.6e tol=%.6e\n",
                      result.passed ? "PASS" : "FAIL", result.name.c_str(),
                      result.max_error, result.tolerance);
        out << line;
        if (!result.passed) ++failures;
    }
    out << (failures == 0 ? "selftest: all checks passed\n"
                          : "selftest: " + std::to_string(failures) + " check(s) failed\n");
    return failures;
}

}  // namespace fredbvp

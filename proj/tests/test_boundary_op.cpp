#include <doctest.h>

#include <cmath>
#include <random>

#include "fredbvp/boundary.hpp"
#include "fredbvp/ode.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace fredbvp;
using test_helpers::sample_scalar;
using test_helpers::sample_vector;

TEST_CASE("apply: point evaluation terms") {
    const Grid grid(Interval(0.0, 1.0), 64);

    SUBCASE("Cauchy condition B y = y(a)") {
        const auto y = sample_vector(grid, {[](double t) {
            Vector v(2);
            v << Complex(std::sin(t), 0), Complex(t * t, -t);
            return v;
        }});
        const BoundaryOperator B(2, 2, 0,
                                 {PointDerivativeTerm{0, 0.0, Matrix::Identity(2, 2)}},
                                 grid.interval());
        const Vector out = B.apply(y);
        CHECK((out - y.at(0, 0)).norm() == 0.0);
    }

    SUBCASE("two-point sum: y(a) + y(b) for y = (t, 1-t)") {
        const auto y = sample_vector(grid, {[](double t) {
            Vector v(2);
            v << Complex(t, 0), Complex(1.0 - t, 0);
            return v;
        }});
        const BoundaryOperator B(2, 2, 0,
                                 {PointDerivativeTerm{0, 0.0, Matrix::Identity(2, 2)},
                                  PointDerivativeTerm{0, 1.0, Matrix::Identity(2, 2)}},
                                 grid.interval());
        const Vector out = B.apply(y);
        CHECK(std::abs(out(0) - Complex(1, 0)) < 1e-15);
        CHECK(std::abs(out(1) - Complex(1, 0)) < 1e-15);
    }

    SUBCASE("off-node point uses interpolation (exact on quadratics)") {
        const auto y = sample_scalar(grid, {[](double t) { return t * t; }});
        const double t_j = 0.5 + grid.step() / 3.0;
        const BoundaryOperator B(1, 1, 0, {PointDerivativeTerm{0, t_j, Matrix::Ones(1, 1)}},
                                 grid.interval());
        CHECK(std::abs(B.apply(y)(0).real() - t_j * t_j) < 1e-12);
    }

    SUBCASE("derivative orders: alpha_0 y(a) + alpha_1 y'(a) on a column of Y") {
        const Grid fine(Interval(0.0, 1.0), 256);
        std::mt19937_64 rng(7);
        const Matrix A = oracles::random_matrix(rng, 2, 2);
        const auto fm =
            solve_fundamental(CoefficientSpec::constant(A).materialize(fine, 1), 2);
        Matrix alpha1 = Matrix::Zero(2, 2);
        alpha1(0, 0) = Complex(1, 0);
        const BoundaryOperator B(2, 2, 2,
                                 {PointDerivativeTerm{0, 0.0, Matrix::Identity(2, 2)},
                                  PointDerivativeTerm{1, 0.0, alpha1}},
                                 fine.interval());
        for (Eigen::Index j = 0; j < 2; ++j) {
            const Vector out = B.apply(column(fm.Y, j));
            const Vector expected =
                (Matrix::Identity(2, 2) - alpha1 * A).col(j);  // Y'(a) = -A
            CHECK((out - expected).norm() < 1e-13);
        }
    }
}

TEST_CASE("apply_to_matrix and the column rule") {
    const Grid grid(Interval(0.0, 1.0), 128);

    SUBCASE("evaluation at a reproduces the identity") {
        const auto fm = solve_fundamental(
            CoefficientSpec::constant(Matrix::Zero(2, 2)).materialize(grid, 0), 1);
        const BoundaryOperator B(2, 2, 0,
                                 {PointDerivativeTerm{0, 0.0, Matrix::Identity(2, 2)}},
                                 grid.interval());
        CHECK((B.apply_to_matrix(fm.Y) - Matrix::Identity(2, 2)).norm() == 0.0);
    }

    SUBCASE("evaluation at b with zero coefficient is also the identity") {
        const auto fm = solve_fundamental(
            CoefficientSpec::constant(Matrix::Zero(2, 2)).materialize(grid, 0), 1);
        const BoundaryOperator B(2, 2, 0,
                                 {PointDerivativeTerm{0, 1.0, Matrix::Identity(2, 2)}},
                                 grid.interval());
        CHECK((B.apply_to_matrix(fm.Y) - Matrix::Identity(2, 2)).norm() == 0.0);
    }

    SUBCASE("column rule: [BH] d = B(H d) on random data") {
        std::mt19937_64 rng(11);
        for (int trial = 0; trial < 200; ++trial) {
            const Eigen::Index m = 1 + static_cast<Eigen::Index>(rng() % 3);
            const Eigen::Index r = 1 + static_cast<Eigen::Index>(rng() % 3);
            const auto H_spec = CoefficientSpec::polynomial(
                {oracles::random_matrix(rng, m, m), oracles::random_matrix(rng, m, m),
                 oracles::random_matrix(rng, m, m)});
            const GridMatrixFunction H = H_spec.materialize(grid, 1);

            std::vector<BoundaryTerm> terms;
            terms.push_back(PointDerivativeTerm{0, 0.375, oracles::random_matrix(rng, r, m)});
            terms.push_back(PointDerivativeTerm{1, 1.0, oracles::random_matrix(rng, r, m)});
            terms.push_back(
                IntegralTerm{CoefficientSpec::constant(oracles::random_matrix(rng, r, m))});
            terms.push_back(FractionalPointDerivativeTerm{
                0.5, FractionalKind::RiemannLiouvilleRight, 0.25,
                oracles::random_matrix(rng, r, m)});
            const BoundaryOperator B(r, m, 1, std::move(terms), grid.interval());

            const Vector d = oracles::random_vector(rng, m);
            const Vector lhs = B.apply_to_matrix(H) * d;
            const Vector rhs = B.apply(apply_to_constant_vector(H, d));
            const double scale = std::max(1.0, rhs.norm());
            CHECK((lhs - rhs).norm() / scale <= 1e-10);
        }
    }
}

TEST_CASE("apply: linearity and term additivity") {
    const Grid grid(Interval(0.0, 1.0), 128);
    std::mt19937_64 rng(13);

    std::vector<BoundaryTerm> t1;
    t1.push_back(PointDerivativeTerm{0, 0.0, oracles::random_matrix(rng, 2, 2)});
    t1.push_back(IntegralTerm{CoefficientSpec::constant(oracles::random_matrix(rng, 2, 2))});
    std::vector<BoundaryTerm> t2;
    t2.push_back(FractionalPointDerivativeTerm{0.5, FractionalKind::CaputoRight, 0.5,
                                               oracles::random_matrix(rng, 2, 2)});

    std::vector<BoundaryTerm> joined = t1;
    joined.insert(joined.end(), t2.begin(), t2.end());
    const BoundaryOperator B1(2, 2, 0, t1, grid.interval());
    const BoundaryOperator B2(2, 2, 0, t2, grid.interval());
    const BoundaryOperator B12(2, 2, 0, joined, grid.interval());

    const auto y1 = sample_vector(grid, {[](double t) {
        Vector v(2);
        v << Complex(std::sin(2 * t), t), Complex(std::exp(-t), 0);
        return v;
    }});
    const auto y2 = sample_vector(grid, {[](double t) {
        Vector v(2);
        v << Complex(t * t * t, 0), Complex(0, std::cos(t));
        return v;
    }});

    // Additivity over the term list is exact.
    const Vector sum_terms = B1.apply(y1) + B2.apply(y1);
    CHECK((B12.apply(y1) - sum_terms).norm() == 0.0);

    // Linearity in y to 1e-10 relative.
    const Complex c1(0.7, -1.2);
    const Complex c2(-0.3, 0.4);
    const auto combo = linear_combination(y1, c1, y2, c2);
    const Vector lhs = B12.apply(combo);
    const Vector rhs = c1 * B12.apply(y1) + c2 * B12.apply(y2);
    CHECK((lhs - rhs).norm() / std::max(1.0, rhs.norm()) <= 1e-10);
}

TEST_CASE("fractional derivative closed forms") {
    const Grid grid(Interval(0.0, 1.0), kDefaultSteps);
    const double b = 1.0;

    SUBCASE("Caputo annihilates constants") {
        const auto y = sample_scalar(grid, {[](double) { return 4.2; }});
        for (double alpha : {0.3, 0.8}) {
            const Vector out =
                fractional_derivative(y, alpha, FractionalKind::CaputoRight, 0.25);
            CHECK(std::abs(out(0)) <= 1e-6);
        }
    }

    SUBCASE("Riemann-Liouville of a constant, alpha in (0,1)") {
        const double c = 2.0;
        const auto y = sample_scalar(grid, {[c](double) { return c; }});
        for (double alpha : {0.3, 0.5, 0.9}) {
            for (double t_j : {0.0, 0.25, 0.5}) {
                const Vector out = fractional_derivative(
                    y, alpha, FractionalKind::RiemannLiouvilleRight, t_j);
                const double expected = oracles::rl_derivative_of_constant(c, b, t_j, alpha);
                CHECK(std::abs(out(0).real() - expected) / std::abs(expected) <= 1e-3);
            }
        }
    }

    SUBCASE("Riemann-Liouville of a constant, alpha in (1,2)") {
        const double c = 1.5;
        const auto y = sample_scalar(grid, {[c](double) { return c; }});
        const double alpha = 1.5;
        const Vector out =
            fractional_derivative(y, alpha, FractionalKind::RiemannLiouvilleRight, 0.25);
        const double expected = oracles::rl_derivative_of_constant(c, b, 0.25, alpha);
        CHECK(std::abs(out(0).real() - expected) / std::abs(expected) <= 1e-3);
    }

    SUBCASE("power rule: D^alpha (b-t)^alpha = Gamma(alpha+1)") {
        const double alpha = 0.5;
        const auto y =
            sample_scalar(grid, {[alpha](double t) { return std::pow(1.0 - t, alpha); }});
        const Vector out =
            fractional_derivative(y, alpha, FractionalKind::RiemannLiouvilleRight, 0.25);
        const double expected = std::tgamma(alpha + 1.0);
        CHECK(std::abs(out(0).real() - expected) / expected <= 1e-3);
    }

    SUBCASE("cross-check against the substitution-quadrature oracle") {
        const double alpha = 0.5;
        const double mu = 1.0 - alpha;
        const double t_j = 0.25;
        const auto y = sample_scalar(grid, {[](double t) { return std::sin(t); }});
        const Vector ours =
            fractional_derivative(y, alpha, FractionalKind::RiemannLiouvilleRight, t_j);

        auto F = [&](double t) {
            return oracles::fractional_integral_quadrature(
                [](double tau) { return std::sin(tau); }, t, b, mu);
        };
        const double delta = 1e-3;
        const double dF = (F(t_j - 2 * delta) - 8 * F(t_j - delta) + 8 * F(t_j + delta) -
                           F(t_j + 2 * delta)) /
                          (12 * delta);
        const double expected = -dF / std::tgamma(mu);
        CHECK(std::abs(ours(0).real() - expected) / std::abs(expected) <= 1e-3);
    }
}

TEST_CASE("fractional derivative rejects bad inputs") {
    const Grid grid(Interval(0.0, 1.0), 64);
    const auto y = sample_scalar(grid, {[](double) { return 1.0; }});

    CHECK_THROWS_AS(fractional_derivative(y, 2.5, FractionalKind::CaputoRight, 0.25),
                    UnsupportedFractionalOrder);
    CHECK_THROWS_AS(fractional_derivative(y, 1.0, FractionalKind::CaputoRight, 0.25),
                    UnsupportedFractionalOrder);
    // Within 5 grid steps of b.
    CHECK_THROWS_AS(fractional_derivative(y, 0.5, FractionalKind::CaputoRight,
                                          1.0 - 3.0 * grid.step()),
                    PointTooCloseToB);
    // Off-node points are rejected for fractional terms.
    CHECK_THROWS_AS(fractional_derivative(y, 0.5, FractionalKind::CaputoRight,
                                          0.5 + grid.step() / 3.0),
                    PointOutsideInterval);
    // Caputo above order one needs y' at b.
    CHECK_THROWS_AS(fractional_derivative(y, 1.5, FractionalKind::CaputoRight, 0.25),
                    DerivativeStackTooShallow);
}

TEST_CASE("boundary operator validation") {
    const Interval interval(0.0, 1.0);
    CHECK_THROWS_AS(BoundaryOperator(1, 1, 1,
                                     {PointDerivativeTerm{2, 0.0, Matrix::Ones(1, 1)}},
                                     interval),
                    InvalidProblem);
    CHECK_THROWS_AS(BoundaryOperator(1, 1, 1,
                                     {PointDerivativeTerm{0, 2.0, Matrix::Ones(1, 1)}},
                                     interval),
                    PointOutsideInterval);
    CHECK_THROWS_AS(BoundaryOperator(2, 2, 1,
                                     {PointDerivativeTerm{0, 0.0, Matrix::Ones(1, 1)}},
                                     interval),
                    InvalidProblem);
    // Right-sided fractional derivative at b itself is singular.
    CHECK_THROWS_AS(BoundaryOperator(1, 1, 1,
                                     {FractionalPointDerivativeTerm{
                                         0.5, FractionalKind::CaputoRight, 1.0,
                                         Matrix::Ones(1, 1)}},
                                     interval),
                    InvalidProblem);
    // Integer alpha is not a fractional order.
    CHECK_THROWS_AS(BoundaryOperator(1, 1, 1,
                                     {FractionalPointDerivativeTerm{
                                         1.0, FractionalKind::CaputoRight, 0.5,
                                         Matrix::Ones(1, 1)}},
                                     interval),
                    InvalidProblem);

    const BoundaryOperator B(1, 1, 2,
                             {PointDerivativeTerm{2, 0.5, Matrix::Ones(1, 1)}}, interval);
    CHECK(B.max_point_order() == 2);
    const Grid grid(interval, 64);
    const auto shallow = sample_scalar(grid, {[](double t) { return t; }});
    CHECK_THROWS_AS(B.apply(shallow), DerivativeStackTooShallow);
}

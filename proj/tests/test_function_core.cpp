#include <doctest.h>

#include <cmath>
#include <random>

#include "fredbvp/coefficient.hpp"
#include "fredbvp/quadrature.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"

using namespace fredbvp;
using test_helpers::sample_scalar;

namespace {

Matrix scalar(double re) { return Matrix::Constant(1, 1, Complex(re, 0.0)); }

}  // namespace

TEST_CASE("grid nodes are uniform with exact endpoints") {
    const Grid grid(Interval(0.25, 1.75), 6);
    CHECK(grid.node(0) == 0.25);
    CHECK(grid.node(6) == 1.75);
    for (std::size_t i = 0; i <= 6; ++i) {
        CHECK(grid.node(i) == doctest::Approx(0.25 + i * 0.25).epsilon(1e-15));
    }
    CHECK_THROWS_AS(Interval(1.0, 1.0), InvalidProblem);
    CHECK_THROWS_AS(Grid(Interval(0.0, 1.0), 2), InvalidProblem);
}

TEST_CASE("materialize: constant matrix has vanishing derivatives") {
    const Grid grid(Interval(0.0, 1.0), 8);
    Matrix A(2, 2);
    A << Complex(1, 2), Complex(0, -1), Complex(3, 0), Complex(-2, 0.5);
    const auto fun = CoefficientSpec::constant(A).materialize(grid, 1);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        CHECK((fun.at(0, i) - A).norm() == 0.0);
        CHECK(fun.at(1, i).norm() == 0.0);
    }
}

TEST_CASE("materialize: polynomial derivatives are exact") {
    const Grid grid(Interval(0.0, 1.0), 8);
    Matrix A0(1, 1), A1(1, 1);
    A0 << Complex(2, 0);
    A1 << Complex(-3, 1);
    const auto fun = CoefficientSpec::polynomial({A0, A1}).materialize(grid, 2);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        const double t = grid.node(i);
        CHECK((fun.at(0, i) - (A0 + A1 * t)).norm() < 1e-15);
        CHECK((fun.at(1, i) - A1).norm() == 0.0);
        CHECK(fun.at(2, i).norm() == 0.0);
    }
}

TEST_CASE("materialize: sampled sin recovers cos via finite differences") {
    const Grid grid(Interval(0.0, 1.0), 1000);
    const auto spec = CoefficientSpec::sampled(
        1, 1, [](double t) { return scalar(std::sin(t)); });
    const auto fun = spec.materialize(grid, 1);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        worst = std::max(worst,
                         std::abs(fun.at(1, i)(0, 0) - Complex(std::cos(grid.node(i)), 0)));
    }
    CHECK(worst < 1e-6);
    CHECK_THROWS_AS(spec.materialize(grid, 3), UnsupportedDerivativeOrder);
}

TEST_CASE("interpolate: bit-exact at nodes, exact on constants and quartics") {
    const Grid grid(Interval(0.0, 1.0), 100);
    const auto quartic = sample_scalar(grid, {[](double t) { return t * t * t * t; }});
    for (std::size_t i = 0; i <= 100; i += 17) {
        const Vector stored = quartic.at(0, i);
        const Vector interp = quartic.interpolate(grid.node(i), 0);
        CHECK(interp(0) == stored(0));  // bit-exact node reproduction
    }
    // 0.505^4 = 0.065037750625 exactly; degree-4 interpolation reproduces it.
    const Vector v = quartic.interpolate(0.505, 0);
    CHECK(std::abs(v(0).real() - 0.065037750625) < 1e-10);

    const auto constant = sample_scalar(grid, {[](double) { return 3.5; }});
    CHECK(std::abs(constant.interpolate(0.123456, 0)(0).real() - 3.5) < 1e-14);

    CHECK_THROWS_AS(quartic.interpolate(1.5, 0), PointOutsideInterval);
    CHECK_THROWS_AS(quartic.interpolate(0.5, 1), UnsupportedDerivativeOrder);
}

TEST_CASE("integrate_product: Simpson exactness and accuracy") {
    const Grid grid(Interval(0.0, 1.0), 100);
    const auto one_kernel = CoefficientSpec::constant(scalar(1.0)).materialize(grid, 0);

    const auto ones = sample_scalar(grid, {[](double) { return 1.0; }});
    CHECK(integrate_product(one_kernel, ones)(0).real() == doctest::Approx(1.0).epsilon(1e-15));

    const auto cubic = sample_scalar(grid, {[](double t) { return t * t * t; }});
    CHECK(std::abs(integrate_product(one_kernel, cubic)(0).real() - 0.25) < 1e-15);

    const auto exp_fun = sample_scalar(grid, {[](double t) { return std::exp(t); }});
    const double expected = std::exp(1.0) - 1.0;  // e - 1 = 1.718281828459045...
    const double err100 = std::abs(integrate_product(one_kernel, exp_fun)(0).real() - expected);
    CHECK(err100 < 1e-9);

    // Halving h cuts the error by about 16 (fourth-order rule).
    const Grid fine(Interval(0.0, 1.0), 200);
    const auto fine_kernel = CoefficientSpec::constant(scalar(1.0)).materialize(fine, 0);
    const auto fine_exp = sample_scalar(fine, {[](double t) { return std::exp(t); }});
    const double err200 = std::abs(integrate_product(fine_kernel, fine_exp)(0).real() - expected);
    const double ratio = err100 / err200;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("integrate_product: error conditions") {
    const Grid grid(Interval(0.0, 1.0), 100);
    const Grid other(Interval(0.0, 1.0), 50);
    const auto kernel = CoefficientSpec::constant(scalar(1.0)).materialize(grid, 0);
    const auto fun_other = sample_scalar(other, {[](double) { return 1.0; }});
    CHECK_THROWS_AS(integrate_product(kernel, fun_other), GridMismatch);

    const Grid odd(Interval(0.0, 1.0), 101);
    const auto odd_kernel = CoefficientSpec::constant(scalar(1.0)).materialize(odd, 0);
    const auto odd_fun = sample_scalar(odd, {[](double) { return 1.0; }});
    CHECK_THROWS_AS(integrate_product(odd_kernel, odd_fun), OddStepCount);
}

TEST_CASE("linearity of materialize and integrate_product on random pairs") {
    const Grid grid(Interval(0.0, 1.0), 16);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);

    for (int trial = 0; trial < 10; ++trial) {
        const double c1 = dist(rng);
        const double c2 = dist(rng);
        const double w1 = dist(rng);
        const double w2 = dist(rng);
        auto f1 = [c1](double t) { return std::sin(3 * t) * c1 + t; };
        auto f2 = [c2](double t) { return std::cos(2 * t) * c2 - t * t; };

        const auto m1 = CoefficientSpec::sampled(1, 1, [&](double t) {
                            return scalar(f1(t));
                        }).materialize(grid, 2);
        const auto m2 = CoefficientSpec::sampled(1, 1, [&](double t) {
                            return scalar(f2(t));
                        }).materialize(grid, 2);
        const auto combined = CoefficientSpec::sampled(1, 1, [&](double t) {
                                  return scalar(w1 * f1(t) + w2 * f2(t));
                              }).materialize(grid, 2);
        for (int d = 0; d <= 2; ++d) {
            double level_scale = 1.0;
            for (std::size_t i = 0; i < grid.node_count(); ++i) {
                level_scale = std::max(
                    level_scale, std::abs(w1 * m1.at(d, i)(0, 0) + w2 * m2.at(d, i)(0, 0)));
            }
            for (std::size_t i = 0; i < grid.node_count(); ++i) {
                const Complex expected = w1 * m1.at(d, i)(0, 0) + w2 * m2.at(d, i)(0, 0);
                CHECK(std::abs(combined.at(d, i)(0, 0) - expected) / level_scale < 1e-12);
            }
        }

        const auto kernel = CoefficientSpec::constant(scalar(1.0)).materialize(grid, 0);
        const auto g1 = sample_scalar(grid, {f1});
        const auto g2 = sample_scalar(grid, {f2});
        const auto sum = sample_scalar(
            grid, {[&](double t) { return w1 * f1(t) + w2 * f2(t); }});
        const Complex lhs = integrate_product(kernel, sum)(0);
        const Complex rhs =
            w1 * integrate_product(kernel, g1)(0) + w2 * integrate_product(kernel, g2)(0);
        CHECK(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)) < 1e-12);
    }
}

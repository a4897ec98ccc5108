#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

#include "fredbvp/errors.hpp"

namespace fredbvp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Finite interval [a, b] with a < b.
class Interval {
public:
    Interval(double a, double b) : a_(a), b_(b) {
        if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) {
            throw InvalidProblem("interval requires finite a < b");
        }
    }

    double a() const { return a_; }
    double b() const { return b_; }
    double length() const { return b_ - a_; }

    bool contains(double t) const {
        const double slack = 1e-12 * length();
        return t >= a_ - slack && t <= b_ + slack;
    }

    /// Clamp a point carrying rounding noise back into [a, b].
    double clamp(double t) const { return std::min(std::max(t, a_), b_); }

    friend bool operator==(const Interval& x, const Interval& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }

private:
    double a_;
    double b_;
};

/// Uniform grid of n_steps + 1 nodes over an interval. Endpoints are stored
/// exactly; interior nodes are a + i*h, never accumulated.
class Grid {
public:
    Grid(Interval interval, std::size_t n_steps)
        : interval_(interval), n_steps_(n_steps) {
        if (n_steps < 4) {
            throw InvalidProblem("grid needs at least 4 steps (5-point stencils)");
        }
        nodes_.resize(n_steps + 1);
        const double h = step();
        for (std::size_t i = 0; i <= n_steps; ++i) {
            nodes_[i] = interval.a() + static_cast<double>(i) * h;
        }
        nodes_.front() = interval.a();
        nodes_.back() = interval.b();
    }

    const Interval& interval() const { return interval_; }
    std::size_t n_steps() const { return n_steps_; }
    std::size_t node_count() const { return n_steps_ + 1; }
    double step() const { return interval_.length() / static_cast<double>(n_steps_); }
    double node(std::size_t i) const { return nodes_[i]; }
    const std::vector<double>& nodes() const { return nodes_; }

    std::size_t nearest_node(double t) const {
        const double x = (t - interval_.a()) / step();
        auto i = static_cast<long long>(std::llround(x));
        if (i < 0) i = 0;
        if (i > static_cast<long long>(n_steps_)) i = static_cast<long long>(n_steps_);
        return static_cast<std::size_t>(i);
    }

    friend bool operator==(const Grid& x, const Grid& y) {
        return x.interval_ == y.interval_ && x.n_steps_ == y.n_steps_;
    }

private:
    Interval interval_;
    std::size_t n_steps_;
    std::vector<double> nodes_;
};

constexpr std::size_t kDefaultSteps = 2048;
constexpr int kMaxSmoothness = 5;

}  // namespace fredbvp

#include "fredbvp/boundary.hpp"

#include <cmath>

#include "fredbvp/quadrature.hpp"
#include "fredbvp/stencil.hpp"

namespace fredbvp {

namespace {

// Node-identification radius: points this close to a node use the stored
// sample; fractional terms must land on a node within the same radius.
double node_snap_tolerance(const Grid& grid) {
    return 1e-9 * grid.interval().length();
}

bool is_fractional_order_supported(double alpha) {
    if (!(alpha > 0.0 && alpha < 2.0)) return false;
    return alpha != 1.0;
}

void check_point(const Interval& interval, double t, const char* what) {
    if (!interval.contains(t)) {
        throw PointOutsideInterval(std::string(what) + " lies outside [a, b]");
    }
}

// F(t_i) = \int_{t_i}^{b} (tau - t_i)^{mu-1} z(tau) dtau by the product
// trapezoidal rule: the singular kernel is integrated exactly against the
// piecewise-linear interpolant of z.
Vector weakly_singular_integral(const std::vector<Vector>& z, std::size_t start,
                                double h, double mu) {
    const std::size_t n = z.size() - 1;
    Vector acc = Vector::Zero(z[start].size());
    for (std::size_t p = 0; start + p < n; ++p) {
        const double s0 = static_cast<double>(p) * h;
        const double s1 = static_cast<double>(p + 1) * h;
        const double pow0 = std::pow(s0, mu);
        const double pow1 = std::pow(s1, mu);
        const double A = (pow1 - pow0) / mu;
        const double B =
            (std::pow(s1, mu + 1.0) - std::pow(s0, mu + 1.0)) / (mu + 1.0) - s0 * A;
        acc += (A - B / h) * z[start + p] + (B / h) * z[start + p + 1];
    }
    return acc;
}

}  // namespace

BoundaryOperator::BoundaryOperator(Eigen::Index r, Eigen::Index m, int s,
                                   std::vector<BoundaryTerm> terms, Interval interval)
    : r_(r), m_(m), s_(s), interval_(interval), terms_(std::move(terms)) {
    if (r_ <= 0 || m_ <= 0) throw InvalidProblem("boundary operator needs r, m >= 1");
    if (s_ < 0) throw InvalidProblem("boundary operator smoothness must be non-negative");
    for (const auto& term : terms_) {
        if (const auto* pt = std::get_if<PointDerivativeTerm>(&term)) {
            if (pt->order < 0 || pt->order > s_) {
                throw InvalidProblem("point-derivative order must lie in 0..s");
            }
            check_point(interval_, pt->point, "boundary point");
            if (pt->coeff.rows() != r_ || pt->coeff.cols() != m_) {
                throw InvalidProblem("point term coefficient must be r x m");
            }
        } else if (const auto* integral = std::get_if<IntegralTerm>(&term)) {
            if (integral->kernel.rows() != r_ || integral->kernel.cols() != m_) {
                throw InvalidProblem("integral kernel must be r x m");
            }
        } else {
            const auto& fr = std::get<FractionalPointDerivativeTerm>(term);
            if (!(fr.alpha > 0.0) || fr.alpha == std::floor(fr.alpha)) {
                throw InvalidProblem("fractional order must be positive and non-integer");
            }
            check_point(interval_, fr.point, "fractional boundary point");
            if (!(fr.point < interval_.b())) {
                throw InvalidProblem(
                    "right-sided fractional derivative is singular at b itself");
            }
            if (fr.coeff.rows() != r_ || fr.coeff.cols() != m_) {
                throw InvalidProblem("fractional term coefficient must be r x m");
            }
        }
    }
}

int BoundaryOperator::max_point_order() const {
    int top = 0;
    for (const auto& term : terms_) {
        if (const auto* pt = std::get_if<PointDerivativeTerm>(&term)) {
            top = std::max(top, pt->order);
        }
    }
    return top;
}

Vector fractional_derivative(const GridVectorFunction& y, double alpha,
                             FractionalKind kind, double t_j) {
    if (!is_fractional_order_supported(alpha)) {
        throw UnsupportedFractionalOrder(
            "fractional order must lie in (0,1) or (1,2), got " + std::to_string(alpha));
    }
    const Grid& grid = y.grid();
    check_point(grid.interval(), t_j, "fractional point");
    const std::size_t jt = grid.nearest_node(t_j);
    if (std::abs(t_j - grid.node(jt)) > node_snap_tolerance(grid)) {
        throw PointOutsideInterval(
            "fractional derivative point must coincide with a grid node");
    }
    const std::size_t n = grid.n_steps();
    if (n - jt < 5) {
        throw PointTooCloseToB(
            "fractional point within 5 grid steps of b; quadrature accuracy collapses");
    }

    const int outer_order = (alpha < 1.0) ? 1 : 2;
    const double mu = static_cast<double>(outer_order) - alpha;
    const double h = grid.step();

    // Caputo subtracts the Taylor data of y at b, then proceeds as RL.
    std::vector<Vector> z = y.level(0);
    if (kind == FractionalKind::CaputoRight) {
        const Vector yb = y.at(0, n);
        if (outer_order == 1) {
            for (std::size_t i = 0; i <= n; ++i) z[i] -= yb;
        } else {
            if (y.max_derivative() < 1) {
                throw DerivativeStackTooShallow(
                    "Caputo derivative of order > 1 needs y' at b in the stack");
            }
            const Vector dyb = y.at(1, n);
            for (std::size_t i = 0; i <= n; ++i) {
                z[i] -= yb + (grid.node(i) - grid.interval().b()) * dyb;
            }
        }
    }

    // Outer d^n/dt^n of F via a 5-point stencil at node jt; all stencil nodes
    // sit left of b by construction.
    const auto [start, row] = fd::stencil_window(jt, n);
    const auto& table =
        (outer_order == 1) ? fd::kFirstDerivative : fd::kSecondDerivative;
    const double scale = (outer_order == 1) ? 1.0 / (12.0 * h) : 1.0 / (12.0 * h * h);
    const double sign = (outer_order == 1) ? -1.0 : 1.0;

    Vector acc = Vector::Zero(y.rows());
    for (int p = 0; p < 5; ++p) {
        const double w = table[static_cast<std::size_t>(row)][static_cast<std::size_t>(p)];
        if (w == 0.0) continue;
        acc += (w * scale) *
               weakly_singular_integral(z, start + static_cast<std::size_t>(p), h, mu);
    }
    return (sign / std::tgamma(mu)) * acc;
}

Vector BoundaryOperator::apply(const GridVectorFunction& y) const {
    if (y.rows() != m()) {
        throw GridMismatch("function dimension does not match boundary operator");
    }
    if (y.max_derivative() < max_point_order()) {
        throw DerivativeStackTooShallow(
            "function stack does not reach the highest point-derivative order");
    }
    Vector out = Vector::Zero(r());
    for (const auto& term : terms()) {
        if (const auto* pt = std::get_if<PointDerivativeTerm>(&term)) {
            const Grid& grid = y.grid();
            const std::size_t nearest = grid.nearest_node(pt->point);
            Vector value;
            if (std::abs(pt->point - grid.node(nearest)) <= node_snap_tolerance(grid)) {
                value = y.at(pt->order, nearest);
            } else {
                value = y.interpolate(pt->point, pt->order);
            }
            out += pt->coeff * value;
        } else if (const auto* integral = std::get_if<IntegralTerm>(&term)) {
            const GridMatrixFunction kernel = integral->kernel.materialize(y.grid(), 0);
            out += integrate_product(kernel, y);
        } else {
            const auto& fr = std::get<FractionalPointDerivativeTerm>(term);
            out += fr.coeff * fractional_derivative(y, fr.alpha, fr.kind, fr.point);
        }
    }
    return out;
}

Matrix BoundaryOperator::apply_to_matrix(const GridMatrixFunction& Y) const {
    if (Y.cols() != m()) {
        throw GridMismatch("matrix function columns do not match boundary operator");
    }
    Matrix M(r(), Y.cols());
    for (Eigen::Index j = 0; j < Y.cols(); ++j) {
        M.col(j) = apply(column(Y, j));
    }
    return M;
}

}  // namespace fredbvp

#pragma once

#include <variant>
#include <vector>

#include "fredbvp/coefficient.hpp"
#include "fredbvp/grid_function.hpp"
#include "fredbvp/types.hpp"

namespace fredbvp {

enum class FractionalKind {
    RiemannLiouvilleRight,
    CaputoRight,
};

/// coeff * y^(k)(t); k = 0 is classical point evaluation.
struct PointDerivativeTerm {
    int order = 0;
    double point = 0.0;
    Matrix coeff;  // r x m
};

/// \int_a^b kernel(t) * y(t) dt with an r x m kernel.
struct IntegralTerm {
    CoefficientSpec kernel;
};

/// coeff * (D_{b-}^alpha y)(t) for a right-sided fractional derivative of
/// non-integer order alpha in (0,1) or (1,2).
struct FractionalPointDerivativeTerm {
    double alpha = 0.5;
    FractionalKind kind = FractionalKind::CaputoRight;
    double point = 0.0;
    Matrix coeff;  // r x m
};

using BoundaryTerm =
    std::variant<PointDerivativeTerm, IntegralTerm, FractionalPointDerivativeTerm>;

/// Finite-sum representation of a continuous linear operator
/// B: (C^(s))^m -> C^r. The general operator of the theory admits arbitrary
/// continuous functionals; this is the representable subclass.
class BoundaryOperator {
public:
    BoundaryOperator(Eigen::Index r, Eigen::Index m, int s, std::vector<BoundaryTerm> terms,
                     Interval interval);

    Eigen::Index r() const { return r_; }
    Eigen::Index m() const { return m_; }
    int s() const { return s_; }
    const Interval& interval() const { return interval_; }
    const std::vector<BoundaryTerm>& terms() const { return terms_; }

    /// Highest classical derivative order used by any point term.
    int max_point_order() const;

    BoundaryOperator with_terms(std::vector<BoundaryTerm> terms) const {
        return BoundaryOperator(r_, m_, s_, std::move(terms), interval_);
    }

    /// By = sum over terms.
    Vector apply(const GridVectorFunction& y) const;

    /// [BY]: column j of the result is B applied to column j of Y.
    Matrix apply_to_matrix(const GridMatrixFunction& Y) const;

private:
    Eigen::Index r_;
    Eigen::Index m_;
    int s_;
    Interval interval_;
    std::vector<BoundaryTerm> terms_;
};

/// Right-sided fractional derivative (D_{b-}^alpha y)(t_j) at a grid node,
/// for alpha in (0,1) or (1,2). Riemann-Liouville is a product-trapezoidal
/// discretization of the defining integral with the outer derivative taken by
/// a 5-point stencil; Caputo subtracts the Taylor data of y at b first.
/// Points closer than 5 grid steps to b are rejected.
Vector fractional_derivative(const GridVectorFunction& y, double alpha,
                             FractionalKind kind, double t_j);

}  // namespace fredbvp

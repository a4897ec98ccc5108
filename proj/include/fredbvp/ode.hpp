#pragma once

#include "fredbvp/grid_function.hpp"
#include "fredbvp/types.hpp"

namespace fredbvp {

/// Fundamental matrix Y: solution of Y' + A(t) Y = 0, Y(a) = I, carrying a
/// derivative stack up to the problem smoothness s. Y(a) = I holds exactly
/// and det Y(t) is checked against a Liouville-based floor at every node.
struct FundamentalMatrix {
    GridMatrixFunction Y;

    const Interval& interval() const { return Y.grid().interval(); }
};

/// Particular solution of y' + A y = f normalized by y(a) = 0.
struct ParticularSolution {
    GridVectorFunction y_p;
};

/// Integrate the matrix Cauchy problem with classical RK4 on the coefficient
/// grid (A is read at half-steps through interpolation) and fill the
/// derivative stack up to order s via the Leibniz recurrence.
FundamentalMatrix solve_fundamental(const GridMatrixFunction& A, int s);

/// RK4 for y' = f - A y, y(a) = 0, with the derivative stack up to s.
ParticularSolution solve_particular(const GridMatrixFunction& A,
                                    const GridVectorFunction& f, int s);

/// Fill levels 1..s of Y from its value level using
/// Y^(k+1) = -sum_{i<=k} C(k,i) A^(i) Y^(k-i); no numerical differentiation.
GridMatrixFunction derivative_stack(const GridMatrixFunction& A,
                                    const GridMatrixFunction& Y, int s);

/// Same recurrence for y' = f - A y: y^(k+1) = f^(k) - sum C(k,i) A^(i) y^(k-i).
GridVectorFunction derivative_stack(const GridMatrixFunction& A,
                                    const GridVectorFunction& y,
                                    const GridVectorFunction& f, int s);

}  // namespace fredbvp

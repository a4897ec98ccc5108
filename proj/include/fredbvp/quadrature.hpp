#pragma once

#include "fredbvp/grid_function.hpp"
#include "fredbvp/types.hpp"

namespace fredbvp {

/// Composite-Simpson approximation of \int_a^b kernel(t) * fun(t) dt for an
/// r x m kernel and an m-vector integrand on the same grid. O(h^4) for C^4
/// integrands; the step count must be even.
Vector integrate_product(const GridMatrixFunction& kernel, const GridVectorFunction& fun);

}  // namespace fredbvp

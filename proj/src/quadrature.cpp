#include "fredbvp/quadrature.hpp"

namespace fredbvp {

Vector integrate_product(const GridMatrixFunction& kernel, const GridVectorFunction& fun) {
    if (!(kernel.grid() == fun.grid())) {
        throw GridMismatch("integrate_product: kernel and integrand on different grids");
    }
    if (kernel.cols() != fun.rows()) {
        throw GridMismatch("integrate_product: kernel columns must match vector dimension");
    }
    const std::size_t n = kernel.grid().n_steps();
    if (n % 2 != 0) {
        throw OddStepCount("composite Simpson needs an even step count");
    }
    const double h = kernel.grid().step();

    Vector acc = kernel.at(0, 0) * fun.at(0, 0);
    acc += kernel.at(0, n) * fun.at(0, n);
    for (std::size_t i = 1; i < n; ++i) {
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        acc += w * (kernel.at(0, i) * fun.at(0, i));
    }
    return (h / 3.0) * acc;
}

}  // namespace fredbvp

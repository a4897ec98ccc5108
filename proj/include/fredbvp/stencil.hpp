#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "fredbvp/errors.hpp"

namespace fredbvp::fd {

// 5-point finite-difference rows on a uniform grid; central rows are O(h^4).
// Rows are indexed by the position of the target node inside the window:
// 0 and 1 are left-edge one-sided rows, 2 is central, 3 and 4 right-edge.
inline constexpr std::array<std::array<double, 5>, 5> kFirstDerivative = {{
    {-25.0, 48.0, -36.0, 16.0, -3.0},
    {-3.0, -10.0, 18.0, -6.0, 1.0},
    {1.0, -8.0, 0.0, 8.0, -1.0},
    {-1.0, 6.0, -18.0, 10.0, 3.0},
    {3.0, -16.0, 36.0, -48.0, 25.0},
}};

inline constexpr std::array<std::array<double, 5>, 5> kSecondDerivative = {{
    {35.0, -104.0, 114.0, -56.0, 11.0},
    {11.0, -20.0, 6.0, 4.0, -1.0},
    {-1.0, 16.0, -30.0, 16.0, -1.0},
    {-1.0, 4.0, 6.0, -20.0, 11.0},
    {11.0, -56.0, 114.0, -104.0, 35.0},
}};

/// Window start and row index for differentiating node i of n+1 samples.
inline std::pair<std::size_t, int> stencil_window(std::size_t i, std::size_t n) {
    if (i < 2) return {0, static_cast<int>(i)};
    if (i + 2 > n) return {n - 4, static_cast<int>(4 - (n - i))};
    return {i - 2, 2};
}

/// Differentiate uniformly spaced samples once or twice. ValueT must support
/// scaling by double and +=.
template <typename ValueT>
std::vector<ValueT> differentiate_samples(const std::vector<ValueT>& samples, double h,
                                          int order) {
    if (order != 1 && order != 2) {
        throw UnsupportedDerivativeOrder("finite differences support orders 1 and 2");
    }
    const std::size_t n = samples.size() - 1;
    if (n < 4) throw InvalidProblem("need at least 5 samples for 5-point stencils");
    const auto& table = (order == 1) ? kFirstDerivative : kSecondDerivative;
    const double scale = (order == 1) ? 1.0 / (12.0 * h) : 1.0 / (12.0 * h * h);

    std::vector<ValueT> out;
    out.reserve(samples.size());
    for (std::size_t i = 0; i <= n; ++i) {
        const auto [start, row] = stencil_window(i, n);
        const auto& w = table[static_cast<std::size_t>(row)];
        ValueT acc = (w[0] * scale) * samples[start];
        for (int p = 1; p < 5; ++p) {
            acc += (w[p] * scale) * samples[start + static_cast<std::size_t>(p)];
        }
        out.push_back(std::move(acc));
    }
    return out;
}

}  // namespace fredbvp::fd

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fredbvp {

/// One row of the built-in oracle suite.
struct SelftestResult {
    std::string name;
    double max_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

/// Run the built-in oracle suite: matrix-exponential comparison of the
/// fundamental matrix, the two closed-form characteristic matrices, the
/// column-rule identity and the fractional closed forms. tol_scale scales
/// every tolerance (for fault injection in tests).
std::vector<SelftestResult> run_selftest(double tol_scale = 1.0);

/// Render the fixed-format result table; returns the number of failures.
int print_selftest(std::ostream& out, const std::vector<SelftestResult>& results);

}  // namespace fredbvp

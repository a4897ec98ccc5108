#pragma once

#include <optional>
#include <vector>

#include "fredbvp/solver.hpp"

namespace fredbvp {

enum class PerturbationMode {
    CoefficientDecay,        // A_k = A + eps_k * P
    BoundaryDecay,           // term coefficients beta + eps_k * Q
    PointDrift,              // t_{j,k} = t_j + eps_k * delta (classical point terms)
    OscillatoryCoefficient,  // A_k = A + eps_k * sin(k t) * P, P constant
};

enum class EpsSchedule {
    OneOverK,
    OneOverKSquared,
    Zero,
};

const char* to_string(PerturbationMode mode);
const char* to_string(EpsSchedule schedule);
double eps_value(EpsSchedule schedule, int k);

inline const std::vector<int> kDefaultKList = {1, 2, 4, 8, 16, 32, 64};

/// A sequence of problems converging to a base problem. The right sides
/// (f_k, c_k) are held at the base values: the characteristic matrix depends
/// only on (A, B).
struct PerturbationFamily {
    BvpProblem base;
    PerturbationMode mode = PerturbationMode::CoefficientDecay;
    EpsSchedule eps = EpsSchedule::OneOverK;
    std::vector<int> k_list = kDefaultKList;

    /// P for the coefficient modes (constant for OscillatoryCoefficient).
    std::optional<CoefficientSpec> coefficient_perturbation;
    /// Q per boundary term for BoundaryDecay (broadcast if a single entry).
    std::vector<Matrix> boundary_perturbations;
    /// delta for PointDrift.
    double point_drift = 0.0;

    void validate() const;
};

struct ConvergenceRecord {
    int k = 0;
    double eps = 0.0;
    double norm_A_diff = 0.0;  // grid realization of ||A_k - A||_(s-1)
    double norm_M_diff = 0.0;  // Frobenius
    int rank = 0;
    int dim_ker = 0;
    int dim_coker = 0;
};

struct ConvergenceTrace {
    std::vector<ConvergenceRecord> records;  // ordered by k
    CharacteristicMatrix base_matrix;
    FredholmReport base_report;
};

ConvergenceTrace run_family(const PerturbationFamily& family, const Grid& grid);

/// Smallest recorded k* such that dim ker_k <= dim ker and
/// dim coker_k <= dim coker for all recorded k >= k*.
struct SemicontinuityVerdict {
    bool holds = false;
    int k_star = -1;
};

SemicontinuityVerdict check_semicontinuity(const ConvergenceTrace& trace,
                                           const FredholmReport& base_report);

/// Grid realization of ||A_k - A||_(s-1): max over derivative levels
/// 0..s-1 of the max node-wise Frobenius norm.
double coefficient_convergence_norm(const GridMatrixFunction& A_k,
                                    const GridMatrixFunction& A, int s);

/// Operational check of the strong-convergence hypothesis: the coefficient
/// norms must decay (final <= 0.1 * initial, or vanish outright). Boundary
/// term data converge by construction for every supported mode.
struct HypothesisVerdict {
    bool coefficient_norm_converges = false;
    double initial_norm = 0.0;
    double final_norm = 0.0;
};

HypothesisVerdict check_convergence_hypothesis(const ConvergenceTrace& trace);

}  // namespace fredbvp

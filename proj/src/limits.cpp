#include "fredbvp/limits.hpp"

#include <algorithm>
#include <cmath>

namespace fredbvp {

namespace {

constexpr double kHypothesisDecayRatio = 0.1;
constexpr double kHypothesisZeroFloor = 1e-12;

// Derivative stack of eps * sin(k t) * P for constant P:
// d^d/dt^d sin(k t) = k^d sin(k t + d pi/2).
GridMatrixFunction oscillatory_perturbation(const Grid& grid, const Matrix& P, int k,
                                            double eps, int d_max) {
    std::vector<std::vector<Matrix>> levels(static_cast<std::size_t>(d_max) + 1);
    for (int d = 0; d <= d_max; ++d) {
        auto& level = levels[static_cast<std::size_t>(d)];
        level.reserve(grid.node_count());
        const double rate = std::pow(static_cast<double>(k), d);
        const double phase = d * M_PI / 2.0;
        for (std::size_t i = 0; i < grid.node_count(); ++i) {
            const double factor = eps * rate * std::sin(k * grid.node(i) + phase);
            level.push_back(factor * P);
        }
    }
    return GridMatrixFunction(grid, std::move(levels));
}

std::vector<BoundaryTerm> perturb_boundary_terms(const PerturbationFamily& family,
                                                 double eps) {
    const auto& base_terms = family.base.B.terms();
    std::vector<BoundaryTerm> terms = base_terms;
    if (family.mode == PerturbationMode::BoundaryDecay) {
        for (std::size_t i = 0; i < terms.size(); ++i) {
            const Matrix& Q = family.boundary_perturbations.size() == 1
                                  ? family.boundary_perturbations.front()
                                  : family.boundary_perturbations[i];
            if (auto* pt = std::get_if<PointDerivativeTerm>(&terms[i])) {
                pt->coeff += eps * Q;
            } else if (auto* fr = std::get_if<FractionalPointDerivativeTerm>(&terms[i])) {
                fr->coeff += eps * Q;
            } else {
                auto& integral = std::get<IntegralTerm>(terms[i]);
                // Perturb a constant-kernel integral term; other kernel kinds
                // keep their base coefficient data.
                if (integral.kernel.kind() == CoefficientSpec::Kind::ConstantMatrix) {
                    integral.kernel =
                        CoefficientSpec::constant(integral.kernel.constant_value() + eps * Q);
                }
            }
        }
    } else if (family.mode == PerturbationMode::PointDrift) {
        for (auto& term : terms) {
            if (auto* pt = std::get_if<PointDerivativeTerm>(&term)) {
                pt->point = family.base.interval.clamp(pt->point + eps * family.point_drift);
            }
            // Fractional points stay fixed: they are pinned to grid nodes.
        }
    }
    return terms;
}

}  // namespace

const char* to_string(PerturbationMode mode) {
    switch (mode) {
        case PerturbationMode::CoefficientDecay: return "coefficient_decay";
        case PerturbationMode::BoundaryDecay: return "boundary_decay";
        case PerturbationMode::PointDrift: return "point_drift";
        case PerturbationMode::OscillatoryCoefficient: return "oscillatory_coefficient";
    }
    return "unknown";
}

const char* to_string(EpsSchedule schedule) {
    switch (schedule) {
        case EpsSchedule::OneOverK: return "1/k";
        case EpsSchedule::OneOverKSquared: return "1/k^2";
        case EpsSchedule::Zero: return "zero";
    }
    return "unknown";
}

double eps_value(EpsSchedule schedule, int k) {
    switch (schedule) {
        case EpsSchedule::OneOverK: return 1.0 / static_cast<double>(k);
        case EpsSchedule::OneOverKSquared: return 1.0 / (static_cast<double>(k) * k);
        case EpsSchedule::Zero: return 0.0;
    }
    return 0.0;
}

void PerturbationFamily::validate() const {
    base.validate();
    if (k_list.empty()) throw InvalidProblem("perturbation family needs a k list");
    if (!std::is_sorted(k_list.begin(), k_list.end()) ||
        std::adjacent_find(k_list.begin(), k_list.end()) != k_list.end()) {
        throw InvalidProblem("k list must be strictly increasing");
    }
    if (k_list.front() < 1) throw InvalidProblem("k values must be positive");

    const bool needs_coeff = mode == PerturbationMode::CoefficientDecay ||
                             mode == PerturbationMode::OscillatoryCoefficient;
    if (needs_coeff) {
        if (!coefficient_perturbation.has_value()) {
            throw InvalidProblem("coefficient mode needs a perturbation P");
        }
        if (coefficient_perturbation->rows() != base.m ||
            coefficient_perturbation->cols() != base.m) {
            throw InvalidProblem("perturbation P must be m x m");
        }
        if (mode == PerturbationMode::OscillatoryCoefficient &&
            coefficient_perturbation->kind() != CoefficientSpec::Kind::ConstantMatrix) {
            throw InvalidProblem("oscillatory perturbation requires a constant P");
        }
    }
    if (mode == PerturbationMode::BoundaryDecay) {
        const std::size_t expected = base.B.terms().size();
        if (boundary_perturbations.size() != expected &&
            boundary_perturbations.size() != 1) {
            throw InvalidProblem("boundary decay needs one Q per term (or a single Q)");
        }
        for (const auto& Q : boundary_perturbations) {
            if (Q.rows() != base.B.r() || Q.cols() != base.B.m()) {
                throw InvalidProblem("boundary perturbation Q must be r x m");
            }
        }
    }
}

ConvergenceTrace run_family(const PerturbationFamily& family, const Grid& grid) {
    family.validate();
    const int s = family.base.s;

    const GridMatrixFunction A = family.base.A.materialize(grid, s - 1);
    ConvergenceTrace trace;
    trace.base_matrix = characteristic_matrix(A, family.base.B, s);
    trace.base_report = fredholm_report(trace.base_matrix);

    std::optional<GridMatrixFunction> P;
    if (family.coefficient_perturbation.has_value() &&
        family.mode == PerturbationMode::CoefficientDecay) {
        P = family.coefficient_perturbation->materialize(grid, s - 1);
    }

    for (int k : family.k_list) {
        const double eps = eps_value(family.eps, k);

        GridMatrixFunction A_k = A;
        if (family.mode == PerturbationMode::CoefficientDecay) {
            A_k.add_scaled(*P, Complex(eps, 0.0));
        } else if (family.mode == PerturbationMode::OscillatoryCoefficient) {
            const Matrix& Pmat = family.coefficient_perturbation->constant_value();
            A_k.add_scaled(oscillatory_perturbation(grid, Pmat, k, eps, s - 1),
                           Complex(1.0, 0.0));
        }
        const BoundaryOperator B_k =
            family.base.B.with_terms(perturb_boundary_terms(family, eps));

        const CharacteristicMatrix cm = characteristic_matrix(A_k, B_k, s);
        const FredholmReport report = fredholm_report(cm);

        ConvergenceRecord record;
        record.k = k;
        record.eps = eps;
        record.norm_A_diff = coefficient_convergence_norm(A_k, A, s);
        record.norm_M_diff = (cm.M - trace.base_matrix.M).norm();
        record.rank = report.rank;
        record.dim_ker = report.dim_ker;
        record.dim_coker = report.dim_coker;
        trace.records.push_back(record);
    }
    return trace;
}

SemicontinuityVerdict check_semicontinuity(const ConvergenceTrace& trace,
                                           const FredholmReport& base_report) {
    SemicontinuityVerdict verdict;
    if (trace.records.empty()) return verdict;

    // Largest index where an inequality is violated; everything after holds.
    std::ptrdiff_t last_bad = -1;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(trace.records.size()); ++i) {
        const auto& rec = trace.records[static_cast<std::size_t>(i)];
        if (rec.dim_ker > base_report.dim_ker || rec.dim_coker > base_report.dim_coker) {
            last_bad = i;
        }
    }
    if (last_bad + 1 < static_cast<std::ptrdiff_t>(trace.records.size())) {
        verdict.holds = true;
        verdict.k_star = trace.records[static_cast<std::size_t>(last_bad + 1)].k;
    }
    return verdict;
}

double coefficient_convergence_norm(const GridMatrixFunction& A_k,
                                    const GridMatrixFunction& A, int s) {
    if (A_k.max_derivative() < s - 1 || A.max_derivative() < s - 1) {
        throw UnsupportedDerivativeOrder("stacks too short for the (s-1) norm");
    }
    return max_level_diff_norm(A_k, A, s - 1);
}

HypothesisVerdict check_convergence_hypothesis(const ConvergenceTrace& trace) {
    HypothesisVerdict verdict;
    if (trace.records.empty()) return verdict;
    verdict.initial_norm = trace.records.front().norm_A_diff;
    verdict.final_norm = trace.records.back().norm_A_diff;
    verdict.coefficient_norm_converges =
        verdict.initial_norm <= kHypothesisZeroFloor ||
        verdict.final_norm <= kHypothesisDecayRatio * verdict.initial_norm;
    return verdict;
}

}  // namespace fredbvp

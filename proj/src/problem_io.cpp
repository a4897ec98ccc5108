#include "fredbvp/problem_io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace fredbvp {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError("problem file: " + where + ": " + what);
}

const json& require(const json& node, const char* key, const std::string& where) {
    auto it = node.find(key);
    if (it == node.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

double require_real(const json& node, const char* key, const std::string& where) {
    const json& v = require(node, key, where);
    if (!v.is_number()) fail(where + "/" + key, "expected a number");
    return v.get<double>();
}

Eigen::Index require_int(const json& node, const char* key, const std::string& where) {
    const json& v = require(node, key, where);
    if (!v.is_number_integer()) fail(where + "/" + key, "expected an integer");
    return v.get<Eigen::Index>();
}

Complex parse_complex(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        fail(where, "complex entries are [re, im] pairs");
    }
    return {v[0].get<double>(), v[1].get<double>()};
}

json dump_complex(const Complex& z) { return json::array({z.real(), z.imag()}); }

Matrix parse_matrix(const json& node, const std::string& where) {
    const auto rows = require_int(node, "rows", where);
    const auto cols = require_int(node, "cols", where);
    if (rows <= 0 || cols <= 0) fail(where, "matrix shape must be positive");
    const json& data = require(node, "data", where);
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows * cols) {
        fail(where + "/data", "expected rows*cols row-major complex entries");
    }
    Matrix out(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            out(i, j) = parse_complex(data[static_cast<std::size_t>(i * cols + j)],
                                      where + "/data");
        }
    }
    return out;
}

json dump_matrix(const Matrix& m) {
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back(dump_complex(m(i, j)));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Vector parse_vector(const json& node, const std::string& where) {
    const auto dim = require_int(node, "dim", where);
    if (dim <= 0) fail(where, "vector dimension must be positive");
    const json& data = require(node, "data", where);
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != dim) {
        fail(where + "/data", "expected dim complex entries");
    }
    Vector out(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        out(i) = parse_complex(data[static_cast<std::size_t>(i)], where + "/data");
    }
    return out;
}

json dump_vector(const Vector& v) {
    json data = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(dump_complex(v(i)));
    return json{{"dim", v.size()}, {"data", std::move(data)}};
}

CoefficientSpec parse_coefficient(const json& node, const std::string& where) {
    const json& kind = require(node, "kind", where);
    if (kind == "constant") {
        return CoefficientSpec::constant(parse_matrix(require(node, "value", where),
                                                      where + "/value"));
    }
    if (kind == "polynomial") {
        const json& coeffs = require(node, "coefficients", where);
        if (!coeffs.is_array() || coeffs.empty()) {
            fail(where + "/coefficients", "expected a non-empty array of matrices");
        }
        std::vector<Matrix> parsed;
        parsed.reserve(coeffs.size());
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            parsed.push_back(parse_matrix(coeffs[k],
                                          where + "/coefficients[" + std::to_string(k) + "]"));
        }
        return CoefficientSpec::polynomial(std::move(parsed));
    }
    fail(where + "/kind", "expected 'constant' or 'polynomial'");
}

json dump_coefficient(const CoefficientSpec& spec) {
    switch (spec.kind()) {
        case CoefficientSpec::Kind::ConstantMatrix:
            return json{{"kind", "constant"}, {"value", dump_matrix(spec.constant_value())}};
        case CoefficientSpec::Kind::MatrixPolynomialInT: {
            json coeffs = json::array();
            for (const auto& c : spec.poly_coeffs()) coeffs.push_back(dump_matrix(c));
            return json{{"kind", "polynomial"}, {"coefficients", std::move(coeffs)}};
        }
        case CoefficientSpec::Kind::SampledWithFiniteDifferenceDerivatives:
            throw ParseError("sampled coefficients are not representable in problem files");
    }
    throw ParseError("unknown coefficient kind");
}

BoundaryTerm parse_term(const json& node, const std::string& where) {
    const json& variant = require(node, "variant", where);
    if (variant == "point_derivative") {
        PointDerivativeTerm term;
        term.order = static_cast<int>(require_int(node, "order", where));
        term.point = require_real(node, "point", where);
        term.coeff = parse_matrix(require(node, "coeff", where), where + "/coeff");
        return term;
    }
    if (variant == "integral") {
        return IntegralTerm{
            parse_coefficient(require(node, "kernel", where), where + "/kernel")};
    }
    if (variant == "fractional") {
        FractionalPointDerivativeTerm term;
        term.alpha = require_real(node, "alpha", where);
        const json& kind = require(node, "kind", where);
        if (kind == "caputo") {
            term.kind = FractionalKind::CaputoRight;
        } else if (kind == "riemann_liouville") {
            term.kind = FractionalKind::RiemannLiouvilleRight;
        } else {
            fail(where + "/kind", "expected 'caputo' or 'riemann_liouville'");
        }
        term.point = require_real(node, "point", where);
        term.coeff = parse_matrix(require(node, "coeff", where), where + "/coeff");
        return term;
    }
    fail(where + "/variant", "expected 'point_derivative', 'integral' or 'fractional'");
}

json dump_term(const BoundaryTerm& term) {
    if (const auto* pt = std::get_if<PointDerivativeTerm>(&term)) {
        return json{{"variant", "point_derivative"},
                    {"order", pt->order},
                    {"point", pt->point},
                    {"coeff", dump_matrix(pt->coeff)}};
    }
    if (const auto* integral = std::get_if<IntegralTerm>(&term)) {
        return json{{"variant", "integral"}, {"kernel", dump_coefficient(integral->kernel)}};
    }
    const auto& fr = std::get<FractionalPointDerivativeTerm>(term);
    return json{{"variant", "fractional"},
                {"alpha", fr.alpha},
                {"kind", fr.kind == FractionalKind::CaputoRight ? "caputo"
                                                                : "riemann_liouville"},
                {"point", fr.point},
                {"coeff", dump_matrix(fr.coeff)}};
}

PerturbationFamily parse_limits(const json& node, const BvpProblem& base,
                                const std::string& where) {
    PerturbationFamily family{base, PerturbationMode::CoefficientDecay, EpsSchedule::OneOverK,
                              kDefaultKList, std::nullopt, {}, 0.0};
    const json& mode = require(node, "mode", where);
    if (mode == "coefficient_decay") {
        family.mode = PerturbationMode::CoefficientDecay;
    } else if (mode == "boundary_decay") {
        family.mode = PerturbationMode::BoundaryDecay;
    } else if (mode == "point_drift") {
        family.mode = PerturbationMode::PointDrift;
    } else if (mode == "oscillatory_coefficient") {
        family.mode = PerturbationMode::OscillatoryCoefficient;
    } else {
        fail(where + "/mode", "unknown perturbation mode");
    }
    if (auto it = node.find("eps_schedule"); it != node.end()) {
        if (*it == "1/k") {
            family.eps = EpsSchedule::OneOverK;
        } else if (*it == "1/k^2") {
            family.eps = EpsSchedule::OneOverKSquared;
        } else if (*it == "zero") {
            family.eps = EpsSchedule::Zero;
        } else {
            fail(where + "/eps_schedule", "expected '1/k', '1/k^2' or 'zero'");
        }
    }
    if (auto it = node.find("k_list"); it != node.end()) {
        if (!it->is_array() || it->empty()) fail(where + "/k_list", "expected integers");
        family.k_list.clear();
        for (const auto& k : *it) {
            if (!k.is_number_integer()) fail(where + "/k_list", "expected integers");
            family.k_list.push_back(k.get<int>());
        }
    }
    if (auto it = node.find("coefficient"); it != node.end()) {
        family.coefficient_perturbation = parse_coefficient(*it, where + "/coefficient");
    }
    if (auto it = node.find("boundary_deltas"); it != node.end()) {
        if (!it->is_array()) fail(where + "/boundary_deltas", "expected matrices");
        for (std::size_t i = 0; i < it->size(); ++i) {
            family.boundary_perturbations.push_back(parse_matrix(
                (*it)[i], where + "/boundary_deltas[" + std::to_string(i) + "]"));
        }
    }
    if (auto it = node.find("point_drift"); it != node.end()) {
        if (!it->is_number()) fail(where + "/point_drift", "expected a number");
        family.point_drift = it->get<double>();
    }
    return family;
}

json dump_limits(const PerturbationFamily& family) {
    json node{{"mode", to_string(family.mode)},
              {"eps_schedule", to_string(family.eps)},
              {"k_list", family.k_list}};
    if (family.coefficient_perturbation.has_value()) {
        node["coefficient"] = dump_coefficient(*family.coefficient_perturbation);
    }
    if (!family.boundary_perturbations.empty()) {
        json deltas = json::array();
        for (const auto& Q : family.boundary_perturbations) deltas.push_back(dump_matrix(Q));
        node["boundary_deltas"] = std::move(deltas);
    }
    if (family.point_drift != 0.0) node["point_drift"] = family.point_drift;
    return node;
}

}  // namespace

ProblemDocument parse_problem_text(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ParseError("problem file: top level must be an object");

    const json& interval_node = require(root, "interval", "/");
    const double a = require_real(interval_node, "a", "/interval");
    const double b = require_real(interval_node, "b", "/interval");
    if (!(a < b)) fail("/interval", "requires a < b");
    const Interval interval(a, b);

    const json& system = require(root, "system", "/");
    const Eigen::Index m = require_int(system, "m", "/system");
    const int s = static_cast<int>(require_int(system, "s", "/system"));
    CoefficientSpec A = parse_coefficient(require(system, "A", "/system"), "/system/A");
    CoefficientSpec f = parse_coefficient(require(system, "f", "/system"), "/system/f");

    const json& boundary = require(root, "boundary", "/");
    const Eigen::Index r = require_int(boundary, "r", "/boundary");
    const json& terms_node = require(boundary, "terms", "/boundary");
    if (!terms_node.is_array() || terms_node.empty()) {
        fail("/boundary/terms", "expected a non-empty array");
    }
    std::vector<BoundaryTerm> terms;
    terms.reserve(terms_node.size());
    for (std::size_t i = 0; i < terms_node.size(); ++i) {
        terms.push_back(
            parse_term(terms_node[i], "/boundary/terms[" + std::to_string(i) + "]"));
    }

    const json& data = require(root, "data", "/");
    Vector c = parse_vector(require(data, "c", "/data"), "/data/c");

    ProblemDocument doc{BvpProblem{interval, m, s, std::move(A), std::move(f),
                                   BoundaryOperator(r, m, s, std::move(terms), interval),
                                   std::move(c)},
                        kDefaultSteps, std::nullopt};
    try {
        doc.problem.validate();
    } catch (const Error& e) {
        throw ParseError(std::string("problem file: ") + e.what());
    }

    if (auto it = root.find("grid"); it != root.end()) {
        const Eigen::Index n = require_int(*it, "n_steps", "/grid");
        if (n < 4) fail("/grid/n_steps", "needs at least 4 steps");
        doc.n_steps = static_cast<std::size_t>(n);
    }
    if (auto it = root.find("limits"); it != root.end()) {
        doc.family = parse_limits(*it, doc.problem, "/limits");
        try {
            doc.family->validate();
        } catch (const Error& e) {
            throw ParseError(std::string("problem file: /limits: ") + e.what());
        }
    }
    return doc;
}

ProblemDocument parse_problem_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open problem file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_text(buffer.str());
}

json serialize_problem(const ProblemDocument& doc) {
    const BvpProblem& p = doc.problem;
    json terms = json::array();
    for (const auto& term : p.B.terms()) terms.push_back(dump_term(term));

    json root{
        {"interval", {{"a", p.interval.a()}, {"b", p.interval.b()}}},
        {"system",
         {{"m", p.m}, {"s", p.s}, {"A", dump_coefficient(p.A)}, {"f", dump_coefficient(p.f)}}},
        {"boundary", {{"r", p.B.r()}, {"terms", std::move(terms)}}},
        {"data", {{"c", dump_vector(p.c)}}},
        {"grid", {{"n_steps", doc.n_steps}}},
    };
    if (doc.family.has_value()) root["limits"] = dump_limits(*doc.family);
    return root;
}

std::string problem_hash(const ProblemDocument& doc) {
    const std::string canonical = serialize_problem(doc).dump();
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char ch : canonical) {
        hash ^= ch;
        hash *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash);
    return buf;
}

json report_to_json(const ReportData& data) {
    json sigma = json::array();
    for (Eigen::Index i = 0; i < data.char_matrix.singular_values.size(); ++i) {
        sigma.push_back(data.char_matrix.singular_values(i));
    }
    json warnings = json::array();
    if (data.report.rank_unstable) warnings.push_back("RankUnstable");

    json root{
        {"problem_hash", data.hash},
        {"m", data.report.m},
        {"r", data.report.r},
        {"characteristic_matrix", dump_matrix(data.char_matrix.M)},
        {"singular_values", std::move(sigma)},
        {"rank_tolerance", data.char_matrix.rank_tolerance},
        {"rank", data.report.rank},
        {"dim_ker", data.report.dim_ker},
        {"dim_coker", data.report.dim_coker},
        {"index", data.report.index},
        {"invertible", data.report.invertible},
        {"spectral_gap", std::isfinite(data.report.spectral_gap)
                             ? json(data.report.spectral_gap)
                             : json("inf")},
        {"warnings", std::move(warnings)},
    };
    if (data.classification.has_value()) {
        root["classification"] = to_string(*data.classification);
        root["underdetermined"] = data.underdetermined;
        root["kernel_dim"] = data.kernel_dim;
    }
    json residuals = json::object();
    if (data.least_squares_residual) residuals["least_squares"] = *data.least_squares_residual;
    if (data.ode_residual) residuals["ode"] = *data.ode_residual;
    if (data.boundary_residual) residuals["boundary"] = *data.boundary_residual;
    if (!residuals.empty()) root["residuals"] = std::move(residuals);
    return root;
}

std::string render_report_text(const ReportData& data) {
    std::ostringstream out;
    out << "problem hash      : " << data.hash << "\n";
    out << "shape             : r = " << data.report.r << ", m = " << data.report.m << "\n";
    out << "characteristic M  :\n";
    for (Eigen::Index i = 0; i < data.char_matrix.M.rows(); ++i) {
        out << "   ";
        for (Eigen::Index j = 0; j < data.char_matrix.M.cols(); ++j) {
            const Complex z = data.char_matrix.M(i, j);
            out << " (" << fmt_double(z.real()) << ", " << fmt_double(z.imag()) << ")";
        }
        out << "\n";
    }
    out << "singular values   :";
    for (Eigen::Index i = 0; i < data.char_matrix.singular_values.size(); ++i) {
        out << " " << fmt_double(data.char_matrix.singular_values(i));
    }
    out << "\n";
    out << "rank              : " << data.report.rank
        << "  (tolerance " << fmt_double(data.char_matrix.rank_tolerance) << ")\n";
    out << "dim ker           : " << data.report.dim_ker << "\n";
    out << "dim coker         : " << data.report.dim_coker << "\n";
    out << "index             : " << data.report.index << "\n";
    out << "invertible        : " << (data.report.invertible ? "yes" : "no") << "\n";
    if (std::isfinite(data.report.spectral_gap)) {
        out << "spectral gap      : " << fmt_double(data.report.spectral_gap) << "\n";
    } else {
        out << "spectral gap      : inf\n";
    }
    if (data.report.rank_unstable) {
        out << "warning           : RankUnstable (spectral gap below "
            << kRankUnstableGap << ")\n";
    }
    if (data.classification.has_value()) {
        out << "classification    : " << to_string(*data.classification)
            << (data.underdetermined ? " (underdetermined)" : "") << "\n";
        out << "kernel dimension  : " << data.kernel_dim << "\n";
    }
    if (data.least_squares_residual) {
        out << "lsq residual      : " << fmt_double(*data.least_squares_residual) << "\n";
    }
    if (data.ode_residual) {
        out << "ode residual      : " << fmt_double(*data.ode_residual) << "\n";
    }
    if (data.boundary_residual) {
        out << "boundary residual : " << fmt_double(*data.boundary_residual) << "\n";
    }
    return out.str();
}

void write_solution_csv(std::ostream& out, const BvpSolution& solution, const Grid& grid) {
    out << "t";
    const Eigen::Index m = solution.particular.has_value() ? solution.particular->rows()
                            : !solution.kernel_basis.empty() ? solution.kernel_basis[0].rows()
                                                             : 0;
    if (solution.particular.has_value()) {
        for (Eigen::Index j = 0; j < m; ++j) {
            out << ",re_y" << (j + 1) << ",im_y" << (j + 1);
        }
    }
    for (std::size_t k = 0; k < solution.kernel_basis.size(); ++k) {
        for (Eigen::Index j = 0; j < m; ++j) {
            out << ",re_ker" << (k + 1) << "_y" << (j + 1) << ",im_ker" << (k + 1) << "_y"
                << (j + 1);
        }
    }
    out << "\n";
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        out << fmt_double(grid.node(i));
        if (solution.particular.has_value()) {
            const Vector& y = solution.particular->at(0, i);
            for (Eigen::Index j = 0; j < m; ++j) {
                out << "," << fmt_double(y(j).real()) << "," << fmt_double(y(j).imag());
            }
        }
        for (const auto& kernel : solution.kernel_basis) {
            const Vector& y = kernel.at(0, i);
            for (Eigen::Index j = 0; j < m; ++j) {
                out << "," << fmt_double(y(j).real()) << "," << fmt_double(y(j).imag());
            }
        }
        out << "\n";
    }
}

void write_trace_csv(std::ostream& out, const ConvergenceTrace& trace) {
    out << "k,eps,norm_A_diff,norm_M_diff,rank,dim_ker,dim_coker\n";
    for (const auto& rec : trace.records) {
        out << rec.k << "," << fmt_double(rec.eps) << "," << fmt_double(rec.norm_A_diff)
            << "," << fmt_double(rec.norm_M_diff) << "," << rec.rank << "," << rec.dim_ker
            << "," << rec.dim_coker << "\n";
    }
}

}  // namespace fredbvp

#include "spherefit/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "spherefit/errors.hpp"
#include "spherefit/point_io.hpp"

namespace spherefit {

LabeledData::LabeledData(PointSet pts, Vector y, std::optional<Vector> clean)
    : points(std::move(pts)), values(std::move(y)), clean_values(std::move(clean)) {
    const auto n = static_cast<Eigen::Index>(points.size());
    if (values.size() != n) throw Error("value count does not match point count");
    if (clean_values && clean_values->size() != n) throw Error("clean value count does not match point count");
}

LabeledData LabeledData::select(std::span<const std::size_t> indices) const {
    Vector y(static_cast<Eigen::Index>(indices.size()));
    std::optional<Vector> clean;
    if (clean_values) clean = Vector(y.size());
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const auto i = static_cast<Eigen::Index>(indices[k]);
        y[static_cast<Eigen::Index>(k)] = values[i];
        if (clean) (*clean)[static_cast<Eigen::Index>(k)] = (*clean_values)[i];
    }
    return LabeledData(points.select(indices), std::move(y), std::move(clean));
}

ConditioningReport conditioning(const Vector& eigenvalues) {
    ConditioningReport r;
    if (eigenvalues.size() == 0) return r;
    r.sigma_max = eigenvalues.maxCoeff();
    r.sigma_min = eigenvalues.minCoeff();
    const double floor = std::numeric_limits<double>::epsilon() * r.sigma_max;
    r.cnkm = r.sigma_max > 0.0 ? r.sigma_max / std::max(r.sigma_min, floor) : std::numeric_limits<double>::infinity();
    return r;
}

ConditioningReport conditioning(const Matrix& a) { return conditioning(sym_eig(a).eigenvalues); }

ConditioningReport filtered_conditioning(const FilterSpec& spec, const SymmetricEigenDecomposition& eig, double tau) {
    const double kappa = eig.size() > 0 ? eig.eigenvalues[0] : 0.0;
    if (kappa > 0.0) tau = std::min(tau, 1.0 / kappa);
    std::vector<double> kept;
    for (Eigen::Index i = 0; i < eig.size(); ++i) {
        const double sigma = eig.eigenvalues[i];
        if (!(sigma > 0.0)) continue;
        const double g = filter_scalar(spec, sigma, kappa, tau);
        if (g > 0.0) kept.push_back(g);
    }
    ConditioningReport r;
    r.sigma_max = eig.size() > 0 ? eig.eigenvalues.maxCoeff() : r.sigma_max;
    r.sigma_min = eig.size() > 0 ? eig.eigenvalues.minCoeff() : r.sigma_min;
    if (kept.empty()) {
        r.cnkm = 1.0;
        return r;
    }
    const auto [lo, hi] = std::minmax_element(kept.begin(), kept.end());
    r.cnkm = *hi / *lo;
    return r;
}

namespace {

constexpr Eigen::Index kEvalBlock = 1024;

}  // namespace

Vector evaluate(const KernelSpec& kernel, const Matrix& centers, const Vector& coefficients, const Matrix& queries) {
    if (centers.cols() != coefficients.size()) throw Error("coefficient count does not match centers");
    if (centers.rows() != queries.rows()) throw Error("query and center dimensions differ");
    Vector out(queries.cols());
    for (Eigen::Index start = 0; start < queries.cols(); start += kEvalBlock) {
        const Eigen::Index len = std::min(kEvalBlock, queries.cols() - start);
        Matrix k = queries.middleCols(start, len).transpose() * centers;
        k = k.unaryExpr([&](double dot) {
            return kernel_profile(kernel.family, std::sqrt(std::max(0.0, 2.0 - 2.0 * dot)) / kernel.support_radius);
        });
        out.segment(start, len).noalias() = k * coefficients;
    }
    return out;
}

Vector evaluate(const FittedModel& model, const PointSet& queries) {
    return evaluate(model.kernel, model.centers.coords(), model.coefficients, queries.coords());
}

FittedModel fit_ki(const LabeledData& data, const KernelSpec& kernel) {
    const Matrix phi = kernel_matrix(kernel, data.points);
    const auto solved = solve_spd(phi, data.values, 0.0);
    const bool with_diag = data.size() <= kDiagnosticsLimit;
    if (!solved.x.allFinite() || solved.relative_residual > 1e-4) {
        const double sigma_min = with_diag ? sym_eig(phi).eigenvalues.minCoeff() : std::nan("");
        throw SingularMatrixError("kernel matrix is numerically singular", sigma_min);
    }
    FittedModel model{kernel, data.points, solved.x, "ki", std::nan(""), {}};
    if (with_diag) model.diagnostics = conditioning(phi);
    model.diagnostics.ill_conditioned = solved.ill_conditioned;
    return model;
}

WsfSystem::WsfSystem(const KernelSpec& kernel, QuadratureRule rule) : kernel_(kernel), rule_(std::move(rule)) {
    if (rule_.weights.size() != static_cast<Eigen::Index>(rule_.points.size()))
        throw Error("quadrature weights do not match its points");
    if (!(rule_.weights.minCoeff() > 0.0)) throw Error("quadrature weights must be positive");
    sqrt_w_ = rule_.weights.cwiseSqrt();
    psi_ = sqrt_w_.asDiagonal() * kernel_matrix(kernel_, rule_.points) * sqrt_w_.asDiagonal();
    // exact symmetry so the solvers accept it
    psi_ = 0.5 * (psi_ + psi_.transpose()).eval();
}

double WsfSystem::kappa() const {
    std::call_once(kappa_once_, [this] { kappa_ = largest_eigenvalue(psi_, kLandweberPowerTol); });
    return kappa_;
}

double WsfSystem::tau() const { return landweber_tau_from_kappa(kappa()); }

const SymmetricEigenDecomposition& WsfSystem::eig() const {
    std::call_once(eig_once_, [this] { eig_ = sym_eig(psi_); });
    return eig_;
}

Vector WsfSystem::coefficients(const FilterSpec& filter, const Vector& y) const {
    if (y.size() != psi_.rows()) throw Error("value count does not match the weighted system");
    const Vector rhs = sqrt_w_.cwiseProduct(y);
    Vector u;
    switch (filter.family) {
        case FilterFamily::tikhonov:
            u = solve_spd(psi_, rhs, filter.parameter).x;
            break;
        case FilterFamily::landweber:
            u = landweber_path(psi_, rhs, {filter.steps()}, tau()).front();
            break;
        case FilterFamily::cutoff:
            u = apply_filter_spectral(filter, eig(), rhs, 0.0);
            break;
    }
    return sqrt_w_.cwiseProduct(u);
}

std::vector<Vector> WsfSystem::landweber_coefficients(const std::vector<int>& steps, const Vector& y) const {
    if (y.size() != psi_.rows()) throw Error("value count does not match the weighted system");
    auto path = landweber_path(psi_, sqrt_w_.cwiseProduct(y), steps, tau());
    for (auto& u : path) u = sqrt_w_.cwiseProduct(u);
    return path;
}

ConditioningReport WsfSystem::diagnostics(const FilterSpec& filter) const {
    ConditioningReport r;
    if (size() <= kDiagnosticsLimit) {
        r = filtered_conditioning(filter, eig(), filter.family == FilterFamily::landweber ? tau() : 0.0);
    }
    r.clamped_weight_count = rule_.clamped_count;
    return r;
}

FittedModel WsfSystem::model(const FilterSpec& filter, Vector coefficients, bool with_diagnostics) const {
    FittedModel m{kernel_, rule_.points, std::move(coefficients), "wsf+" + filter_name(filter.family),
                  filter.parameter, {}};
    if (with_diagnostics) m.diagnostics = diagnostics(filter);
    m.diagnostics.clamped_weight_count = rule_.clamped_count;
    return m;
}

FittedModel WsfSystem::fit(const FilterSpec& filter, const Vector& y, bool with_diagnostics) const {
    return model(filter, coefficients(filter, y), with_diagnostics);
}

namespace {

void require_same_points(const LabeledData& data, const QuadratureRule& rule) {
    if (data.points.coords().rows() != rule.points.coords().rows() ||
        data.points.coords().cols() != rule.points.coords().cols() ||
        data.points.coords() != rule.points.coords())
        throw Error("quadrature rule points differ from the data points");
}

}  // namespace

FittedModel fit_wsf(const LabeledData& data, const KernelSpec& kernel, const QuadratureRule& rule,
                    const FilterSpec& filter) {
    require_same_points(data, rule);
    WsfSystem system(kernel, rule);
    return system.fit(filter, data.values);
}

FittedModel fit_wsf_noise_free(const LabeledData& data, const KernelSpec& kernel, const QuadratureRule& rule,
                               const FilterSpec& filter) {
    if (!data.clean_values) throw Error("noise-free fit needs clean values");
    require_same_points(data, rule);
    WsfSystem system(kernel, rule);
    return system.fit(filter, *data.clean_values);
}

void write_model(const std::filesystem::path& path, const FittedModel& model) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "# kernel=" << kernel_name(model.kernel) << '\n';
    out << "# method=" << model.method_tag << '\n';
    out << "# param=" << (std::isnan(model.param) ? std::string("none") : format_real(model.param)) << '\n';
    const Matrix& x = model.centers.coords();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out << format_real(x(0, j)) << ' ' << format_real(x(1, j)) << ' ' << format_real(x(2, j)) << ' '
            << format_real(model.coefficients[j]) << '\n';
    }
    if (!out) throw Error("failed writing " + path.string());
}

FittedModel read_model(const std::filesystem::path& path) {
    auto table = read_point_table(path);
    if (!table.values) throw ParseError(path.string() + ": model rows need `x y z a`", 0);
    std::string kernel = "wendland_4_1";
    std::string method;
    double param = std::nan("");
    for (const auto& line : table.header_comments) {
        if (line.rfind("kernel=", 0) == 0) kernel = line.substr(7);
        if (line.rfind("method=", 0) == 0) method = line.substr(7);
        if (line.rfind("param=", 0) == 0 && line.substr(6) != "none") param = std::stod(line.substr(6));
    }
    if (method.empty()) throw ParseError(path.string() + ": missing `# method=` header", 0);
    return FittedModel{kernel_from_name(kernel), PointSet(std::move(table.coords)), std::move(*table.values), method,
                       param, {}};
}

}  // namespace spherefit

#include "spherefit/filters.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spherefit/errors.hpp"

namespace spherefit {

std::string filter_name(FilterFamily family) {
    switch (family) {
        case FilterFamily::tikhonov:
            return "tikhonov";
        case FilterFamily::landweber:
            return "landweber";
        case FilterFamily::cutoff:
            return "cutoff";
    }
    return "unknown";
}

FilterFamily filter_from_name(std::string_view name) {
    if (name == "tikhonov") return FilterFamily::tikhonov;
    if (name == "landweber") return FilterFamily::landweber;
    if (name == "cutoff") return FilterFamily::cutoff;
    throw Error("unknown filter '" + std::string(name) + "'");
}

FilterSpec FilterSpec::tikhonov(double mu) { return make(FilterFamily::tikhonov, mu); }
FilterSpec FilterSpec::landweber(double lambda) { return make(FilterFamily::landweber, lambda); }
FilterSpec FilterSpec::cutoff(double nu) { return make(FilterFamily::cutoff, nu); }

FilterSpec FilterSpec::landweber_steps(int l) {
    if (l < 1) throw Error("landweber needs at least one step");
    return make(FilterFamily::landweber, 1.0 / l);
}

FilterSpec FilterSpec::make(FilterFamily family, double parameter) {
    if (!(parameter > 0.0) || !std::isfinite(parameter)) throw Error("filter parameter must be positive and finite");
    FilterSpec spec;
    spec.family = family;
    spec.parameter = parameter;
    spec.qualification = family == FilterFamily::tikhonov ? 1.0 : std::numeric_limits<double>::infinity();
    spec.stability_b = 1.0;
    return spec;
}

int FilterSpec::steps() const {
    if (family != FilterFamily::landweber) throw Error("steps() is defined for landweber only");
    return static_cast<int>(std::lround(1.0 / parameter));
}

double landweber_tau_from_kappa(double kappa_hat) {
    if (!(kappa_hat > 0.0)) throw Error("landweber needs a nonzero matrix");
    return 1.0 / (kappa_hat * (1.0 + 10.0 * kLandweberPowerTol));
}

double landweber_tau(const Matrix& psi) { return landweber_tau_from_kappa(largest_eigenvalue(psi, kLandweberPowerTol)); }

double filter_scalar(const FilterSpec& spec, double sigma, double kappa, double tau) {
    switch (spec.family) {
        case FilterFamily::tikhonov:
            return 1.0 / (sigma + spec.parameter);
        case FilterFamily::landweber: {
            if (!(tau > 0.0) || tau * kappa > 1.0 + 1e-12) throw Error("landweber tau must lie in (0, 1/kappa]");
            const int l = spec.steps();
            if (sigma <= 0.0) return tau * (l + 1);
            // tau sum_{k=0}^{l} q^k = (1 - q^{l+1}) / sigma with q = 1 - tau sigma
            const double ts = std::min(tau * sigma, 1.0);
            return -std::expm1((l + 1) * std::log1p(-ts)) / sigma;
        }
        case FilterFamily::cutoff:
            return sigma >= spec.parameter && sigma > 0.0 ? 1.0 / sigma : 0.0;
    }
    return 0.0;
}

Vector apply_filter(const FilterSpec& spec, const Matrix& psi, const Vector& rhs) {
    if (spec.family == FilterFamily::landweber) return apply_filter(spec, psi, rhs, landweber_tau(psi));
    return apply_filter(spec, psi, rhs, 0.0);
}

Vector apply_filter(const FilterSpec& spec, const Matrix& psi, const Vector& rhs, double tau) {
    if (psi.rows() != psi.cols() || psi.rows() != rhs.size()) throw Error("filter dimensions do not match");
    switch (spec.family) {
        case FilterFamily::tikhonov:
            return solve_spd(psi, rhs, spec.parameter).x;
        case FilterFamily::landweber:
            return landweber_path(psi, rhs, {spec.steps()}, tau).front();
        case FilterFamily::cutoff:
            return apply_filter_spectral(spec, sym_eig(psi), rhs, tau);
    }
    return Vector();
}

Vector apply_filter_spectral(const FilterSpec& spec, const SymmetricEigenDecomposition& eig, const Vector& rhs,
                             double tau) {
    const double kappa = eig.size() > 0 ? eig.eigenvalues[0] : 0.0;
    if (kappa > 0.0 && spec.family == FilterFamily::landweber) tau = std::min(tau, 1.0 / kappa);
    Vector coeff = eig.eigenvectors.transpose() * rhs;
    for (Eigen::Index i = 0; i < coeff.size(); ++i) {
        const double sigma = eig.eigenvalues[i];
        coeff[i] *= sigma > 0.0 ? filter_scalar(spec, sigma, kappa, tau) : 0.0;
    }
    return eig.eigenvectors * coeff;
}

std::vector<Vector> landweber_path(const Matrix& psi, const Vector& rhs, const std::vector<int>& steps, double tau) {
    if (!(tau > 0.0)) throw Error("landweber tau must be positive");
    std::vector<Vector> out(steps.size());
    int last = 0;
    for (int l : steps) {
        if (l < 0) throw Error("landweber step count must be nonnegative");
        last = std::max(last, l);
    }
    Vector u = tau * rhs;
    for (int k = 0;; ++k) {
        for (std::size_t i = 0; i < steps.size(); ++i)
            if (steps[i] == k) out[i] = u;
        if (k == last) break;
        u.noalias() += tau * (rhs - psi * u);
    }
    return out;
}

FilterConditionReport check_filter_conditions(const FilterSpec& spec, double kappa, int grid_size) {
    if (!(kappa > 0.0)) throw Error("kappa must be positive");
    if (grid_size < 2) throw Error("grid needs at least two points");
    // landweber runs with tau = 1/kappa, so its parameter 1/l lives in units of kappa
    const double tau = 1.0 / kappa;
    const double lambda = spec.family == FilterFamily::landweber ? spec.parameter * kappa : spec.parameter;
    std::vector<double> vs{0.0, 0.5, 1.0};
    if (spec.family != FilterFamily::tikhonov) vs.push_back(2.0);

    FilterConditionReport report;
    std::vector<double> worst(vs.size(), 0.0);
    for (int i = 0; i < grid_size; ++i) {
        const double exponent = -12.0 + 12.0 * (i + 1) / grid_size;
        const double sigma = i + 1 == grid_size ? kappa : kappa * std::pow(10.0, exponent);
        const double g = filter_scalar(spec, sigma, kappa, tau);
        report.sup_g_times_lambda = std::max(report.sup_g_times_lambda, std::abs(g) * lambda);
        report.sup_g_sigma = std::max(report.sup_g_sigma, std::abs(g * sigma));
        const double residual = std::abs(1.0 - g * sigma);
        for (std::size_t j = 0; j < vs.size(); ++j) {
            worst[j] = std::max(worst[j], residual * std::pow(sigma / lambda, vs[j]));
        }
    }
    for (std::size_t j = 0; j < vs.size(); ++j) report.residual_bounds.emplace_back(vs[j], worst[j]);
    return report;
}

}  // namespace spherefit

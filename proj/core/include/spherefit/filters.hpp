#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spherefit/linalg.hpp"
#include "spherefit/numerics.hpp"

namespace spherefit {

enum class FilterFamily { tikhonov, landweber, cutoff };

std::string filter_name(FilterFamily family);
FilterFamily filter_from_name(std::string_view name);

/// Spectral filter g_lambda. `parameter` is mu (tikhonov), 1/l (landweber)
/// or nu (cutoff).
struct FilterSpec {
    FilterFamily family = FilterFamily::tikhonov;
    double parameter = 1.0;
    double qualification = 1.0;  // +inf for landweber and cutoff
    double stability_b = 1.0;

    static FilterSpec tikhonov(double mu);
    static FilterSpec landweber(double lambda);
    static FilterSpec landweber_steps(int l);
    static FilterSpec cutoff(double nu);
    static FilterSpec make(FilterFamily family, double parameter);

    /// round(1 / parameter); landweber only.
    int steps() const;
};

/// Landweber step size used by apply_filter: 1 / (kappa_hat (1 + 1e-7)),
/// which stays within (0, 1/kappa] given the power iteration accuracy.
double landweber_tau(const Matrix& psi);
double landweber_tau_from_kappa(double kappa_hat);
inline constexpr double kLandweberPowerTol = 1e-8;

/// g_lambda(sigma). For landweber this is tau sum_{k=0}^{l} (1 - tau sigma)^k.
/// Throws if tau is outside (0, 1/kappa] for landweber.
double filter_scalar(const FilterSpec& spec, double sigma, double kappa, double tau);

/// g_lambda(psi) rhs. Tikhonov solves (psi + mu I) x = rhs, landweber runs l
/// steps of u <- u + tau (rhs - psi u) from u = tau rhs, cutoff goes through
/// the eigendecomposition and drops eigenvalues below nu.
Vector apply_filter(const FilterSpec& spec, const Matrix& psi, const Vector& rhs);
Vector apply_filter(const FilterSpec& spec, const Matrix& psi, const Vector& rhs, double tau);

/// Spectral form Q diag(g(sigma_i)) Q^T rhs on a precomputed decomposition.
/// Eigenvalues <= 0 map to 0.
Vector apply_filter_spectral(const FilterSpec& spec, const SymmetricEigenDecomposition& eig, const Vector& rhs,
                             double tau);

/// Runs landweber once and returns g(psi) rhs for each requested step count
/// (ascending order not required).
std::vector<Vector> landweber_path(const Matrix& psi, const Vector& rhs, const std::vector<int>& steps, double tau);

struct FilterConditionReport {
    double sup_g_times_lambda = 0.0;  // max lambda |g(sigma)|
    double sup_g_sigma = 0.0;         // max |g(sigma) sigma|
    /// (v, max |1 - g(sigma) sigma| sigma^v / lambda^v)
    std::vector<std::pair<double, double>> residual_bounds;
};

/// Grid suprema over grid_size log-spaced sigma in (1e-12 kappa, kappa].
/// v runs over {0, 0.5, 1}, plus 2 for landweber and cutoff.
FilterConditionReport check_filter_conditions(const FilterSpec& spec, double kappa, int grid_size);

}  // namespace spherefit

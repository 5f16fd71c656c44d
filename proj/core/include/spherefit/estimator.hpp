#pragma once

#include <filesystem>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spherefit/filters.hpp"
#include "spherefit/geometry.hpp"
#include "spherefit/kernels.hpp"
#include "spherefit/numerics.hpp"
#include "spherefit/quadrature.hpp"

namespace spherefit {

/// Samples y_i = f*(x_i) + e_i. `clean_values` holds f*(x_i) in simulations.
struct LabeledData {
    PointSet points;
    Vector values;
    std::optional<Vector> clean_values;

    LabeledData(PointSet pts, Vector y, std::optional<Vector> clean = std::nullopt);

    std::size_t size() const { return points.size(); }
    LabeledData select(std::span<const std::size_t> indices) const;
};

/// Spectral diagnostics of the operative matrix. NaN when not computed.
struct ConditioningReport {
    double cnkm = std::numeric_limits<double>::quiet_NaN();
    double sigma_min = std::numeric_limits<double>::quiet_NaN();
    double sigma_max = std::numeric_limits<double>::quiet_NaN();
    int clamped_weight_count = 0;
    bool ill_conditioned = false;

    bool computed() const { return cnkm == cnkm; }
};

/// Largest system for which fits compute eigen diagnostics.
inline constexpr std::size_t kDiagnosticsLimit = 2500;

ConditioningReport conditioning(const Matrix& a);
/// cnkm = sigma_max / max(sigma_min, eps sigma_max) on given eigenvalues.
ConditioningReport conditioning(const Vector& eigenvalues);

/// Condition number of g(psi) over the eigenvalues it does not annihilate:
/// (kappa + mu)/(sigma_min + mu) for tikhonov, g(sigma_min)/g(kappa) for
/// landweber, kappa / smallest kept eigenvalue for cutoff.
ConditioningReport filtered_conditioning(const FilterSpec& spec, const SymmetricEigenDecomposition& eig, double tau);

struct FittedModel {
    KernelSpec kernel;
    PointSet centers;
    Vector coefficients;
    std::string method_tag;  // "ki" or "wsf+<family>"
    double param = std::numeric_limits<double>::quiet_NaN();
    ConditioningReport diagnostics;
};

/// a = Phi^{-1} y. Proceeds with ill_conditioned set on near-singular Phi;
/// throws SingularMatrixError when no usable solution exists.
FittedModel fit_ki(const LabeledData& data, const KernelSpec& kernel);

/// a = W^{1/2} g(Psi) W^{1/2} y with Psi = W^{1/2} Phi W^{1/2}.
FittedModel fit_wsf(const LabeledData& data, const KernelSpec& kernel, const QuadratureRule& rule,
                    const FilterSpec& filter);

/// Same pipeline fed the clean values f*(x_i).
FittedModel fit_wsf_noise_free(const LabeledData& data, const KernelSpec& kernel, const QuadratureRule& rule,
                               const FilterSpec& filter);

/// v_j = sum_i a_i phi(x_i . q_j).
Vector evaluate(const FittedModel& model, const PointSet& queries);
Vector evaluate(const KernelSpec& kernel, const Matrix& centers, const Vector& coefficients, const Matrix& queries);

/// Weighted kernel system for one (kernel, rule) pair. Caches the matrix, the
/// landweber step size and the eigendecomposition so that many filters and
/// right-hand sides can be applied cheaply. Safe to share between threads.
class WsfSystem {
public:
    WsfSystem(const KernelSpec& kernel, QuadratureRule rule);

    const KernelSpec& kernel() const { return kernel_; }
    const QuadratureRule& rule() const { return rule_; }
    const Matrix& psi() const { return psi_; }
    std::size_t size() const { return rule_.points.size(); }

    /// Top eigenvalue of psi by power iteration.
    double kappa() const;
    /// Landweber step 1 / (kappa (1 + 1e-7)).
    double tau() const;
    const SymmetricEigenDecomposition& eig() const;

    /// Coefficients W^{1/2} g(Psi) W^{1/2} y. Tikhonov solves, landweber
    /// iterates, cutoff uses the cached decomposition.
    Vector coefficients(const FilterSpec& filter, const Vector& y) const;
    /// Landweber coefficients for several step counts from one run.
    std::vector<Vector> landweber_coefficients(const std::vector<int>& steps, const Vector& y) const;

    ConditioningReport diagnostics(const FilterSpec& filter) const;

    FittedModel model(const FilterSpec& filter, Vector coefficients, bool with_diagnostics) const;
    FittedModel fit(const FilterSpec& filter, const Vector& y, bool with_diagnostics = true) const;

private:
    KernelSpec kernel_;
    QuadratureRule rule_;
    Vector sqrt_w_;
    Matrix psi_;
    mutable std::once_flag kappa_once_;
    mutable double kappa_ = 0.0;
    mutable std::once_flag eig_once_;
    mutable SymmetricEigenDecomposition eig_;
};

/// Center rows `x y z a` after `# kernel=`, `# method=`, `# param=` headers.
void write_model(const std::filesystem::path& path, const FittedModel& model);
FittedModel read_model(const std::filesystem::path& path);

}  // namespace spherefit

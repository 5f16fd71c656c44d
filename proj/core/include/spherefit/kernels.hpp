#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "spherefit/geometry.hpp"

namespace spherefit {

enum class KernelFamily {
    wendland_4_1,  // (1-r)_+^4 (4r+1), positive definite on S^2
};

/// Zonal kernel phi(x . x') = h(|x - x'| / support_radius), evaluated on the
/// Euclidean chord distance.
struct KernelSpec {
    KernelFamily family = KernelFamily::wendland_4_1;
    double support_radius = 1.0;
    /// Decay exponent of the Legendre coefficients, phi_k ~ k^{-2 gamma}.
    /// Metadata only.
    double smoothness_gamma = 2.0;

    static KernelSpec wendland_4_1() { return {}; }
};

KernelSpec kernel_from_name(std::string_view name);
std::string kernel_name(const KernelSpec& spec);
/// Registered kernel identifiers.
std::vector<std::string> kernel_names();

/// Radial profile h(r) of the family, r >= 0 in support units.
double kernel_profile(KernelFamily family, double r);

double kernel_eval(const KernelSpec& spec, const SpherePoint& a, const SpherePoint& b);

/// Phi_ij = phi(x_i . x_j). Symmetric by construction, unit diagonal.
Matrix kernel_matrix(const KernelSpec& spec, const PointSet& set);

/// K_qj = phi(q_q . x_j), shape |queries| x |centers|.
Matrix cross_kernel_matrix(const KernelSpec& spec, const PointSet& queries, const PointSet& centers);

/// Compactly supported Wendland function (1-u)_+^8 (32u^3 + 25u^2 + 8u + 1).
double wendland_bump(double u);

/// Sum of six Wendland bumps centered at +-e1, +-e2, +-e3 (chord distance).
double target_function(const SpherePoint& x);
Vector target_function(const PointSet& points);

}  // namespace spherefit

#pragma once

#include <filesystem>

#include "spherefit/geometry.hpp"

namespace spherefit {

/// Positive quadrature rule on S^2 for the normalized surface measure.
struct QuadratureRule {
    PointSet points;
    Vector weights;
    int degree_s = 0;
    /// Nodes whose solver weight was zero and were lifted to kClampedWeight.
    int clamped_count = 0;
};

inline constexpr double kExactnessTolerance = 1e-8;
inline constexpr double kClampedWeight = 1e-12;

/// Equal weights 1/n with degree t. Throws NotADesignError when the equal
/// weight rule is not exact to degree t within kExactnessTolerance.
QuadratureRule tdesign_rule(const PointSet& points, int t);

/// Nonnegative weights that integrate every harmonic of degree <= s, found by
/// NNLS on the moment system. Zero weights are lifted to kClampedWeight and
/// the weights renormalized. Throws InfeasibleDegreeError when the moment
/// residual exceeds kExactnessTolerance.
QuadratureRule compute_weights(const PointSet& points, int s);

/// Default degree hint floor(1 / mesh_norm).
int default_degree_hint(const PointSet& points);

/// Largest s <= s_hint for which compute_weights succeeds without clamping.
int max_feasible_degree(const PointSet& points, int s_hint);

/// compute_weights at max_feasible_degree(points, s_hint).
QuadratureRule auto_rule(const PointSet& points, int s_hint);

/// max over k <= s of |sum_i w_i Y_{k,l}(x_i) - delta_{k0}|.
double verify_exactness(const QuadratureRule& rule, int s);

/// `x y z w` rows after a `# degree=s` header line.
void write_rule(const std::filesystem::path& path, const QuadratureRule& rule);
QuadratureRule read_rule(const std::filesystem::path& path);

}  // namespace spherefit

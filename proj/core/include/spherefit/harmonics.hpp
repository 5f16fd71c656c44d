#pragma once

#include <cstdint>

#include "spherefit/geometry.hpp"

namespace spherefit {

/// Dimension Z(d, k) of the space of degree-k spherical harmonics on S^d.
std::int64_t zdim(int d, int k);

/// Legendre polynomial P_k(u) with P_k(1) = 1 (Gegenbauer for S^2).
double legendre_p(int k, double u);

/// Real spherical harmonics on S^2 up to degree s evaluated at the points.
///
/// Rows are ordered by degree k and, within a degree, as
/// m = 0, (m = 1, cos), (m = 1, sin), ..., (m = k, sin). The harmonics are
/// orthonormal for the normalized surface measure (total mass 1), so the
/// degree-0 row is identically one. No Condon-Shortley phase.
struct HarmonicBasisMatrix {
    int degree_s = 0;
    Matrix values;  // (s+1)^2 x n

    static constexpr Eigen::Index row(int k, int l) { return static_cast<Eigen::Index>(k) * k + l; }
};

HarmonicBasisMatrix harmonic_basis(const PointSet& points, int s);

/// All (s+1)^2 harmonics at one unit vector, same ordering as above.
void evaluate_harmonics(double x, double y, double z, int s, double* out);

}  // namespace spherefit

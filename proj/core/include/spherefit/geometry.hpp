#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "spherefit/linalg.hpp"

namespace spherefit {

/// A direction on the unit sphere S^d, stored as d+1 direction cosines.
/// The coordinates are renormalized on construction.
class SpherePoint {
public:
    explicit SpherePoint(const Vector& coords);
    SpherePoint(double x, double y, double z);

    const Vector& coords() const noexcept { return coords_; }
    Eigen::Index ambient_size() const noexcept { return coords_.size(); }
    double operator[](Eigen::Index i) const { return coords_[i]; }
    double dot(const SpherePoint& other) const { return coords_.dot(other.coords_); }

private:
    Vector coords_;
};

/// Ordered, immutable set of distinct points on S^d. Points are the columns
/// of a (d+1) x n matrix so that Gram matrices are a single product.
class PointSet {
public:
    /// Columns are normalized. Throws if the set is empty, contains a zero
    /// vector, or contains duplicate points.
    explicit PointSet(Matrix columns);
    explicit PointSet(std::span<const SpherePoint> points);

    std::size_t size() const noexcept { return static_cast<std::size_t>(coords_.cols()); }
    int sphere_dim() const noexcept { return static_cast<int>(coords_.rows()) - 1; }
    const Matrix& coords() const noexcept { return coords_; }
    auto column(std::size_t i) const { return coords_.col(static_cast<Eigen::Index>(i)); }
    SpherePoint point(std::size_t i) const { return SpherePoint(Vector(column(i))); }

    /// Subset in the given order.
    PointSet select(std::span<const std::size_t> indices) const;
    /// Apply a linear map (normally a rotation) to every point.
    PointSet transformed(const Matrix& map) const;

private:
    Matrix coords_;
};

struct GeometryStats {
    double mesh_norm = 0.0;          // radians
    double separation_radius = 0.0;  // radians
    double mesh_ratio = 0.0;
};

double geodesic_distance(const SpherePoint& a, const SpherePoint& b);
double geodesic_distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b);

/// Deterministic spherical Fibonacci lattice with `count` points on S^2.
Matrix fibonacci_lattice(std::size_t count);

/// Covering radius estimated on a Fibonacci probe grid of resolution^2
/// points. Always a lower bound of the true mesh norm. S^2 only.
double mesh_norm(const PointSet& set, int probe_resolution = 200);

/// Half the smallest pairwise geodesic distance. Needs at least two points.
double separation_radius(const PointSet& set);

GeometryStats geometry_stats(const PointSet& set, int probe_resolution = 200);

/// n points uniform on S^2 drawn as z ~ U[-1,1], azimuth ~ U[0, 2pi).
PointSet sample_random(std::size_t n, std::uint64_t seed);

/// Load a spherical t-design point file (`x y z` rows). Rows must be unit
/// vectors within 1e-6. With `drop_poles` the points (0,0,+-1) are removed.
PointSet load_tdesign(const std::filesystem::path& source, int t, bool drop_poles = false);

/// Rotation about the z axis by k*pi/20.
Matrix rotation_matrix(int k);

/// base, A_1 base, ..., A_k base concatenated; size = base.size() * (k+1).
PointSet rotated_design(const PointSet& base, int k);

/// Concatenate point sets in order. Throws if the union has duplicates.
PointSet concatenate(std::span<const PointSet> parts);

}  // namespace spherefit

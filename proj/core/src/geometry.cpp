#include "spherefit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "spherefit/errors.hpp"
#include "spherefit/point_io.hpp"
#include "spherefit/random.hpp"

namespace spherefit {

namespace {

constexpr Eigen::Index kBlock = 2048;

double clamped_acos(double c) { return std::acos(std::clamp(c, -1.0, 1.0)); }

void require_distinct(const Matrix& x) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(x.cols()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    auto less = [&](Eigen::Index a, Eigen::Index b) {
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
            if (x(r, a) != x(r, b)) return x(r, a) < x(r, b);
        }
        return false;
    };
    std::sort(order.begin(), order.end(), less);
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (x.col(order[i]) == x.col(order[i - 1])) {
            throw Error("duplicate points at indices " + std::to_string(std::min(order[i], order[i - 1])) +
                        " and " + std::to_string(std::max(order[i], order[i - 1])));
        }
    }
}

}  // namespace

SpherePoint::SpherePoint(const Vector& coords) : coords_(coords) {
    const double norm = coords_.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw Error("cannot normalize a zero or non-finite vector");
    coords_ /= norm;
}

SpherePoint::SpherePoint(double x, double y, double z) : SpherePoint(Vector{{x, y, z}}) {}

PointSet::PointSet(Matrix columns) : coords_(std::move(columns)) {
    if (coords_.cols() == 0) throw Error("point set must not be empty");
    if (coords_.rows() < 2) throw Error("points need at least two coordinates");
    for (Eigen::Index j = 0; j < coords_.cols(); ++j) {
        const double norm = coords_.col(j).norm();
        if (!(norm > 0.0) || !std::isfinite(norm))
            throw Error("point " + std::to_string(j) + " is zero or non-finite");
        coords_.col(j) /= norm;
    }
    require_distinct(coords_);
}

namespace {

Matrix stack(std::span<const SpherePoint> points) {
    if (points.empty()) throw Error("point set must not be empty");
    Matrix m(points.front().ambient_size(), static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (points[i].ambient_size() != m.rows()) throw Error("points of mixed dimension");
        m.col(static_cast<Eigen::Index>(i)) = points[i].coords();
    }
    return m;
}

}  // namespace

PointSet::PointSet(std::span<const SpherePoint> points) : PointSet(stack(points)) {}

PointSet PointSet::select(std::span<const std::size_t> indices) const {
    Matrix m(coords_.rows(), static_cast<Eigen::Index>(indices.size()));
    for (std::size_t i = 0; i < indices.size(); ++i) {
        if (indices[i] >= size()) throw Error("point index out of range");
        m.col(static_cast<Eigen::Index>(i)) = coords_.col(static_cast<Eigen::Index>(indices[i]));
    }
    return PointSet(std::move(m));
}

PointSet PointSet::transformed(const Matrix& map) const {
    if (map.cols() != coords_.rows()) throw Error("transform dimension mismatch");
    return PointSet(map * coords_);
}

double geodesic_distance(const SpherePoint& a, const SpherePoint& b) {
    return clamped_acos(a.dot(b));
}

double geodesic_distance(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
    return clamped_acos(a.dot(b));
}

Matrix fibonacci_lattice(std::size_t count) {
    Matrix m(3, static_cast<Eigen::Index>(count));
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    const auto n = static_cast<double>(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / n;
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double a = golden_angle * static_cast<double>(i);
        m.col(static_cast<Eigen::Index>(i)) << r * std::cos(a), r * std::sin(a), z;
    }
    return m;
}

double mesh_norm(const PointSet& set, int probe_resolution) {
    if (probe_resolution < 10) throw Error("probe resolution must be at least 10");
    if (set.sphere_dim() != 2) throw UnsupportedDimensionError("mesh norm probing is implemented for S^2 only");
    const auto probes = fibonacci_lattice(static_cast<std::size_t>(probe_resolution) * probe_resolution);
    const Matrix& x = set.coords();
    double worst_cos = 1.0;
    for (Eigen::Index start = 0; start < probes.cols(); start += kBlock) {
        const Eigen::Index len = std::min(kBlock, probes.cols() - start);
        const Matrix dots = probes.middleCols(start, len).transpose() * x;
        const double block_min = dots.rowwise().maxCoeff().minCoeff();
        worst_cos = std::min(worst_cos, block_min);
    }
    return clamped_acos(worst_cos);
}

double separation_radius(const PointSet& set) {
    if (set.size() < 2) throw Error("separation radius needs at least two points");
    const Matrix& x = set.coords();
    double best_cos = -1.0;
    for (Eigen::Index start = 0; start < x.cols(); start += kBlock) {
        const Eigen::Index len = std::min(kBlock, x.cols() - start);
        Matrix dots = x.middleCols(start, len).transpose() * x;
        for (Eigen::Index i = 0; i < len; ++i) dots(i, start + i) = -2.0;
        best_cos = std::max(best_cos, dots.maxCoeff());
    }
    return 0.5 * clamped_acos(best_cos);
}

GeometryStats geometry_stats(const PointSet& set, int probe_resolution) {
    GeometryStats s;
    s.mesh_norm = mesh_norm(set, probe_resolution);
    s.separation_radius = separation_radius(set);
    s.mesh_ratio = s.mesh_norm / s.separation_radius;
    return s;
}

PointSet sample_random(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error("sample size must be positive");
    RandomStream rng(seed, /*stream=*/1);
    Matrix m(3, static_cast<Eigen::Index>(n));
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        const double z = rng.uniform(-1.0, 1.0);
        const double a = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        m.col(j) << r * std::cos(a), r * std::sin(a), z;
    }
    return PointSet(std::move(m));
}

PointSet load_tdesign(const std::filesystem::path& source, int t, bool drop_poles) {
    if (t < 1) throw Error("design strength must be positive");
    const PointTable table = read_point_table(source);
    std::vector<Eigen::Index> keep;
    for (Eigen::Index j = 0; j < table.coords.cols(); ++j) {
        const double norm = table.coords.col(j).norm();
        if (std::abs(norm - 1.0) > 1e-6) {
            throw ParseError(source.string() + ": row is not a unit vector (norm " + format_real(norm) + ")",
                             table.line_numbers[static_cast<std::size_t>(j)]);
        }
        const bool pole = std::abs(std::abs(table.coords(2, j)) - 1.0) < 1e-12;
        if (!(drop_poles && pole)) keep.push_back(j);
    }
    Matrix m(3, static_cast<Eigen::Index>(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = table.coords.col(keep[i]);
    return PointSet(std::move(m));
}

Matrix rotation_matrix(int k) {
    const double a = k * std::numbers::pi / 20.0;
    Matrix r = Matrix::Identity(3, 3);
    r(0, 0) = std::cos(a);
    r(0, 1) = -std::sin(a);
    r(1, 0) = std::sin(a);
    r(1, 1) = std::cos(a);
    return r;
}

PointSet rotated_design(const PointSet& base, int k) {
    if (k < 0 || k > 19) throw Error("rotation count must lie in [0, 19]");
    if (base.sphere_dim() != 2) throw UnsupportedDimensionError("rotated designs live on S^2");
    const Matrix& x = base.coords();
    Matrix m(3, x.cols() * (k + 1));
    for (int r = 0; r <= k; ++r) m.middleCols(x.cols() * r, x.cols()) = rotation_matrix(r) * x;
    return PointSet(std::move(m));
}

PointSet concatenate(std::span<const PointSet> parts) {
    if (parts.empty()) throw Error("nothing to concatenate");
    Eigen::Index total = 0;
    for (const auto& p : parts) total += p.coords().cols();
    Matrix m(parts.front().coords().rows(), total);
    Eigen::Index at = 0;
    for (const auto& p : parts) {
        m.middleCols(at, p.coords().cols()) = p.coords();
        at += p.coords().cols();
    }
    return PointSet(std::move(m));
}

}  // namespace spherefit

#include "spherefit/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "spherefit/errors.hpp"

namespace spherefit {

namespace {

double chord_from_dot(double dot) { return std::sqrt(std::max(0.0, 2.0 - 2.0 * dot)); }

}  // namespace

KernelSpec kernel_from_name(std::string_view name) {
    if (name == "wendland_4_1") return KernelSpec::wendland_4_1();
    throw Error("unknown kernel '" + std::string(name) + "'");
}

std::string kernel_name(const KernelSpec& spec) {
    switch (spec.family) {
        case KernelFamily::wendland_4_1:
            return "wendland_4_1";
    }
    return "unknown";
}

std::vector<std::string> kernel_names() { return {"wendland_4_1"}; }

double kernel_profile(KernelFamily family, double r) {
    switch (family) {
        case KernelFamily::wendland_4_1: {
            if (r >= 1.0) return 0.0;
            const double s = 1.0 - r;
            const double s2 = s * s;
            return s2 * s2 * (4.0 * r + 1.0);
        }
    }
    return 0.0;
}

double kernel_eval(const KernelSpec& spec, const SpherePoint& a, const SpherePoint& b) {
    const double chord = (a.coords() - b.coords()).norm();
    return kernel_profile(spec.family, chord / spec.support_radius);
}

Matrix kernel_matrix(const KernelSpec& spec, const PointSet& set) {
    const Matrix& x = set.coords();
    const Eigen::Index n = x.cols();
    Matrix gram = x.transpose() * x;
    Matrix phi(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        phi(j, j) = kernel_profile(spec.family, 0.0);
        for (Eigen::Index i = j + 1; i < n; ++i) {
            const double v = kernel_profile(spec.family, chord_from_dot(gram(i, j)) / spec.support_radius);
            phi(i, j) = v;
            phi(j, i) = v;
        }
    }
    return phi;
}

Matrix cross_kernel_matrix(const KernelSpec& spec, const PointSet& queries, const PointSet& centers) {
    if (queries.coords().rows() != centers.coords().rows()) throw Error("query and center dimensions differ");
    Matrix k = queries.coords().transpose() * centers.coords();
    k = k.unaryExpr([&](double dot) { return kernel_profile(spec.family, chord_from_dot(dot) / spec.support_radius); });
    return k;
}

double wendland_bump(double u) {
    if (u >= 1.0) return 0.0;
    const double s = 1.0 - u;
    const double s2 = s * s;
    const double s4 = s2 * s2;
    return s4 * s4 * (((32.0 * u + 25.0) * u + 8.0) * u + 1.0);
}

double target_function(const SpherePoint& x) {
    if (x.ambient_size() != 3) throw UnsupportedDimensionError("the target function is defined on S^2");
    double sum = 0.0;
    for (int axis = 0; axis < 3; ++axis) {
        for (double sign : {1.0, -1.0}) {
            // |x - sign e_axis|^2 = 2 - 2 sign x_axis
            sum += wendland_bump(chord_from_dot(sign * x[axis]));
        }
    }
    return sum;
}

Vector target_function(const PointSet& points) {
    Vector values(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) values[static_cast<Eigen::Index>(i)] = target_function(points.point(i));
    return values;
}

}  // namespace spherefit

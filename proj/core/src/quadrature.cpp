#include "spherefit/quadrature.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "spherefit/numerics.hpp"
#include "spherefit/point_io.hpp"

namespace spherefit {

namespace {

void require_s2(const PointSet& points) {
    if (points.sphere_dim() != 2) throw UnsupportedDimensionError("quadrature is implemented on S^2 only");
}

Vector moment_target(int s) {
    Vector e = Vector::Zero(static_cast<Eigen::Index>(s + 1) * (s + 1));
    e[0] = 1.0;
    return e;
}

}  // namespace

double verify_exactness(const QuadratureRule& rule, int s) {
    if (s < 0) throw Error("degree must be nonnegative");
    const auto basis = harmonic_basis(rule.points, s);
    const Vector moments = basis.values * rule.weights;
    return (moments - moment_target(s)).cwiseAbs().maxCoeff();
}

QuadratureRule tdesign_rule(const PointSet& points, int t) {
    require_s2(points);
    if (t < 0) throw Error("design strength must be nonnegative");
    const auto n = static_cast<Eigen::Index>(points.size());
    QuadratureRule rule{points, Vector::Constant(n, 1.0 / static_cast<double>(n)), t, 0};
    const double residual = verify_exactness(rule, t);
    if (!(residual <= kExactnessTolerance)) throw NotADesignError(t, residual);
    return rule;
}

QuadratureRule compute_weights(const PointSet& points, int s) {
    require_s2(points);
    if (s < 0) throw Error("degree must be nonnegative");
    const auto basis = harmonic_basis(points, s);
    const Vector target = moment_target(s);
    const auto solved = nnls(basis.values, target);
    const double residual = (basis.values * solved.x - target).norm();
    if (!(residual <= kExactnessTolerance)) throw InfeasibleDegreeError(s, residual);

    Vector w = solved.x;
    int clamped = 0;
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        if (!(w[i] > 0.0)) {
            w[i] = kClampedWeight;
            ++clamped;
        }
    }
    w /= w.sum();
    return QuadratureRule{points, std::move(w), s, clamped};
}

int default_degree_hint(const PointSet& points) {
    const double h = mesh_norm(points);
    if (!(h > 0.0)) return 0;
    return static_cast<int>(std::floor(1.0 / h));
}

int max_feasible_degree(const PointSet& points, int s_hint) {
    require_s2(points);
    if (s_hint < 0) throw Error("degree hint must be nonnegative");
    // (s+1)^2 moments cannot all be matched by fewer nodes in general
    for (int s = s_hint; s > 0; --s) {
        try {
            const auto rule = compute_weights(points, s);
            if (rule.clamped_count == 0) return s;
        } catch (const InfeasibleDegreeError&) {
        }
    }
    return 0;
}

QuadratureRule auto_rule(const PointSet& points, int s_hint) {
    return compute_weights(points, max_feasible_degree(points, s_hint));
}

void write_rule(const std::filesystem::path& path, const QuadratureRule& rule) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "# degree=" << rule.degree_s << "\n";
    out << "# clamped=" << rule.clamped_count << "\n";
    const Matrix& x = rule.points.coords();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        out << format_real(x(0, j)) << ' ' << format_real(x(1, j)) << ' ' << format_real(x(2, j)) << ' '
            << format_real(rule.weights[j]) << '\n';
    }
    if (!out) throw Error("failed writing " + path.string());
}

QuadratureRule read_rule(const std::filesystem::path& path) {
    auto table = read_point_table(path);
    if (!table.values) throw ParseError(path.string() + ": quadrature rows need `x y z w`", 0);
    int degree = -1;
    int clamped = 0;
    for (const auto& line : table.header_comments) {
        if (line.rfind("degree=", 0) == 0) degree = std::stoi(line.substr(7));
        if (line.rfind("clamped=", 0) == 0) clamped = std::stoi(line.substr(8));
    }
    if (degree < 0) throw ParseError(path.string() + ": missing `# degree=` header", 0);
    for (Eigen::Index i = 0; i < table.values->size(); ++i) {
        if (!((*table.values)[i] > 0.0))
            throw ParseError("quadrature weight must be positive", table.line_numbers[static_cast<std::size_t>(i)]);
    }
    return QuadratureRule{PointSet(std::move(table.coords)), std::move(*table.values), degree, clamped};
}

}  // namespace spherefit

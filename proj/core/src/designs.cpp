#include "spherefit/designs.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Cholesky>

#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "spherefit/random.hpp"

#ifndef SPHEREFIT_DEFAULT_DATA_DIR
#define SPHEREFIT_DEFAULT_DATA_DIR "data"
#endif

namespace spherefit {

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("SPHEREFIT_DATA_DIR"); env != nullptr && *env != '\0') return env;
    return SPHEREFIT_DEFAULT_DATA_DIR;
}

std::filesystem::path design_file(const std::filesystem::path& data_dir, int t) {
    char name[32];
    std::snprintf(name, sizeof name, "ss%03d.txt", t);
    return data_dir / "designs" / name;
}

std::filesystem::path rotation_base_file(const std::filesystem::path& data_dir) {
    return data_dir / "designs" / "rot120_15.txt";
}

std::size_t symmetric_design_size(int t) {
    if (t < 1) throw Error("design strength must be positive");
    std::size_t equations = 0;
    for (int k = 2; k <= t; k += 2) equations += static_cast<std::size_t>(2 * k + 1);
    std::size_t n = equations + 3;
    if (n % 2) ++n;
    return std::max<std::size_t>(n, 2);
}

std::size_t shipped_design_size(const std::filesystem::path& data_dir, int t) {
    const auto path = design_file(data_dir, t);
    if (!std::filesystem::exists(path)) return symmetric_design_size(t);
    return load_tdesign(path, t).size();
}

double equal_weight_residual(const Matrix& coords, int t) {
    const Eigen::Index rows = static_cast<Eigen::Index>(t + 1) * (t + 1);
    Vector sum = Vector::Zero(rows);
    Vector y(rows);
    for (Eigen::Index j = 0; j < coords.cols(); ++j) {
        evaluate_harmonics(coords(0, j), coords(1, j), coords(2, j), t, y.data());
        sum += y;
    }
    sum /= static_cast<double>(coords.cols());
    return rows > 1 ? sum.tail(rows - 1).cwiseAbs().maxCoeff() : 0.0;
}

namespace {

Eigen::Vector3d from_angles(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

struct LeastSquaresProblem {
    std::function<Vector(const Vector&)> residual;
    std::function<Matrix(const Vector&)> jacobian;
};

// Levenberg-Marquardt with the damped minimum-norm step
// delta = -J^T (J J^T + mu I)^{-1} F, suited to square or underdetermined
// systems. Returns the final max-abs residual.
double levenberg_marquardt(const LeastSquaresProblem& problem, Vector& params, int max_iterations,
                           double tolerance, int& iterations, bool verbose) {
    Vector f = problem.residual(params);
    double cost = f.squaredNorm();
    double mu = -1.0;
    iterations = 0;
    for (; iterations < max_iterations; ++iterations) {
        if (f.cwiseAbs().maxCoeff() < tolerance) break;
        const Matrix jac = problem.jacobian(params);
        Matrix normal = jac * jac.transpose();
        if (mu < 0) mu = 1e-6 * normal.diagonal().maxCoeff();
        bool improved = false;
        for (int attempt = 0; attempt < 30; ++attempt) {
            Matrix damped = normal;
            damped.diagonal().array() += mu;
            Eigen::LLT<Matrix> llt(damped);
            if (llt.info() != Eigen::Success) {
                mu *= 10.0;
                continue;
            }
            const Vector step = -(jac.transpose() * llt.solve(f));
            const Vector trial = params + step;
            const Vector f_trial = problem.residual(trial);
            const double trial_cost = f_trial.squaredNorm();
            if (trial_cost < cost) {
                params = trial;
                f = f_trial;
                cost = trial_cost;
                mu = std::max(mu / 3.0, 1e-300);
                improved = true;
                break;
            }
            mu *= 4.0;
        }
        if (verbose) std::fprintf(stderr, "  iter %d  max|F| = %.3e  mu = %.3e\n", iterations, f.cwiseAbs().maxCoeff(), mu);
        if (!improved) break;
    }
    return f.cwiseAbs().maxCoeff();
}

std::vector<Eigen::Index> even_degree_rows(int top) {
    std::vector<Eigen::Index> rows;
    for (int k = 2; k <= top; k += 2)
        for (int l = 0; l <= 2 * k; ++l) rows.push_back(HarmonicBasisMatrix::row(k, l));
    return rows;
}

bool well_separated(const Matrix& coords) {
    try {
        return separation_radius(PointSet(coords)) > 1e-4;
    } catch (const Error&) {
        return false;
    }
}

}  // namespace

std::optional<DesignSearchResult> find_symmetric_design(int t, const DesignSearchOptions& options) {
    if (t < 1) throw Error("design strength must be positive");
    for (std::size_t extra = 0; extra <= 2 * static_cast<std::size_t>(options.extra_pairs); extra += 2) {
        if (auto found = find_symmetric_design_of_size(t, symmetric_design_size(t) + extra, options)) return found;
    }
    return std::nullopt;
}

std::optional<DesignSearchResult> find_symmetric_design_of_size(int t, std::size_t n,
                                                                const DesignSearchOptions& options) {
    if (t < 1) throw Error("design strength must be positive");
    if (n < 2 || n % 2 != 0) throw Error("antipodal designs need an even, positive size");
    const auto half = static_cast<Eigen::Index>(n / 2);
    const int top = t % 2 == 0 ? t : t - 1;
    const auto rows = even_degree_rows(top);
    const auto eq = static_cast<Eigen::Index>(rows.size());
    const Eigen::Index basis_size = static_cast<Eigen::Index>(top + 1) * (top + 1);

    auto moments_at = [&](double theta, double phi, Vector& scratch, Vector& out) {
        const Eigen::Vector3d x = from_angles(theta, phi);
        evaluate_harmonics(x[0], x[1], x[2], top, scratch.data());
        for (Eigen::Index r = 0; r < eq; ++r) out[r] = scratch[rows[static_cast<std::size_t>(r)]];
    };

    LeastSquaresProblem problem;
    problem.residual = [&](const Vector& p) {
        Vector scratch(std::max<Eigen::Index>(basis_size, 1));
        Vector one(eq);
        Vector f = Vector::Zero(eq);
        for (Eigen::Index i = 0; i < half; ++i) {
            moments_at(p[i], p[half + i], scratch, one);
            f += one;
        }
        return Vector(f / static_cast<double>(half));
    };
    problem.jacobian = [&](const Vector& p) {
        constexpr double h = 1e-6;
        Vector scratch(std::max<Eigen::Index>(basis_size, 1));
        Vector plus(eq);
        Vector minus(eq);
        Matrix jac(eq, 2 * half);
        const double scale = 1.0 / (2.0 * h * static_cast<double>(half));
        for (Eigen::Index i = 0; i < half; ++i) {
            moments_at(p[i] + h, p[half + i], scratch, plus);
            moments_at(p[i] - h, p[half + i], scratch, minus);
            jac.col(i) = (plus - minus) * scale;
            moments_at(p[i], p[half + i] + h, scratch, plus);
            moments_at(p[i], p[half + i] - h, scratch, minus);
            jac.col(half + i) = (plus - minus) * scale;
        }
        // the first point stays at the north pole
        jac.col(0).setZero();
        jac.col(half).setZero();
        return jac;
    };

    // Upper half of a Fibonacci lattice of n points as the starting guess.
    const Matrix lattice = fibonacci_lattice(n);
    Vector start(2 * half);
    for (Eigen::Index i = 0; i < half; ++i) {
        const auto c = lattice.col(i);
        start[i] = std::acos(std::clamp(c[2], -1.0, 1.0));
        start[half + i] = std::atan2(c[1], c[0]);
    }
    start[0] = 0.0;
    start[half] = 0.0;

    RandomStream rng(options.seed, 7);
    for (int attempt = 0; attempt <= options.restarts; ++attempt) {
        Vector p = start;
        if (attempt > 0) {
            const double jitter = 0.3 * std::sqrt(4.0 * std::numbers::pi / static_cast<double>(n));
            for (Eigen::Index i = 0; i < p.size(); ++i) p[i] += jitter * (rng.uniform() - 0.5);
            p[0] = 0.0;
            p[half] = 0.0;
        }
        int iterations = 0;
        if (options.verbose) std::fprintf(stderr, "t=%d N=%zu attempt %d\n", t, n, attempt);
        if (eq > 0) {
            levenberg_marquardt(problem, p, options.max_iterations, options.tolerance, iterations, options.verbose);
        }
        Matrix coords(3, 2 * half);
        for (Eigen::Index i = 0; i < half; ++i) {
            const Eigen::Vector3d x = i == 0 ? Eigen::Vector3d(0.0, 0.0, 1.0) : from_angles(p[i], p[half + i]);
            coords.col(i) = x;
            coords.col(half + i) = -x;
        }
        const double residual = equal_weight_residual(coords, t);
        if (residual < 1e3 * options.tolerance && well_separated(coords)) {
            return DesignSearchResult{std::move(coords), residual, iterations, attempt};
        }
    }
    return std::nullopt;
}

namespace {

Eigen::Matrix3d axis_rotation(Eigen::Vector3d axis, double angle) {
    axis.normalize();
    Eigen::Matrix3d k;
    k << 0, -axis[2], axis[1], axis[2], 0, -axis[0], -axis[1], axis[0], 0;
    return Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * k * k;
}

std::vector<Eigen::Matrix3d> octahedral_rotations() {
    const Eigen::Matrix3d gens[2] = {axis_rotation({0.0, 0.0, 1.0}, std::numbers::pi / 2.0),
                                     axis_rotation({1.0, 1.0, 1.0}, 2.0 * std::numbers::pi / 3.0)};
    std::vector<Eigen::Matrix3d> group{Eigen::Matrix3d::Identity()};
    for (std::size_t i = 0; i < group.size(); ++i) {
        for (const auto& g : gens) {
            const Eigen::Matrix3d candidate = g * group[i];
            bool known = false;
            for (const auto& h : group) known = known || (candidate - h).cwiseAbs().maxCoeff() < 1e-9;
            if (!known) group.push_back(candidate);
        }
    }
    return group;
}

std::optional<DesignSearchResult> find_orbit_design(const std::vector<Eigen::Matrix3d>& group, int orbits, int t,
                                                    const DesignSearchOptions& options) {
    const auto order = static_cast<Eigen::Index>(group.size());
    const Eigen::Index n = order * orbits;
    const Eigen::Index basis_size = static_cast<Eigen::Index>(t + 1) * (t + 1);

    auto points = [&](const Vector& p) {
        Matrix coords(3, n);
        for (int orbit = 0; orbit < orbits; ++orbit) {
            const Eigen::Vector3d seed = from_angles(p[2 * orbit], p[2 * orbit + 1]);
            for (Eigen::Index g = 0; g < order; ++g)
                coords.col(orbit * order + g) = group[static_cast<std::size_t>(g)] * seed;
        }
        return coords;
    };

    LeastSquaresProblem problem;
    problem.residual = [&](const Vector& p) {
        const Matrix coords = points(p);
        Vector sum = Vector::Zero(basis_size);
        Vector y(basis_size);
        for (Eigen::Index j = 0; j < n; ++j) {
            evaluate_harmonics(coords(0, j), coords(1, j), coords(2, j), t, y.data());
            sum += y;
        }
        return Vector(sum.tail(basis_size - 1) / static_cast<double>(n));
    };
    problem.jacobian = [&](const Vector& p) {
        constexpr double h = 1e-6;
        Matrix jac(basis_size - 1, p.size());
        for (Eigen::Index i = 0; i < p.size(); ++i) {
            Vector a = p;
            Vector b = p;
            a[i] += h;
            b[i] -= h;
            jac.col(i) = (problem.residual(a) - problem.residual(b)) / (2.0 * h);
        }
        return jac;
    };

    RandomStream rng(options.seed, 11);
    double best = 1e300;
    for (int attempt = 0; attempt <= options.restarts; ++attempt) {
        Vector p(2 * orbits);
        for (int o = 0; o < orbits; ++o) {
            p[2 * o] = std::acos(rng.uniform(-1.0, 1.0));
            p[2 * o + 1] = rng.uniform(0.0, 2.0 * std::numbers::pi);
        }
        int iterations = 0;
        levenberg_marquardt(problem, p, options.max_iterations, options.tolerance, iterations, false);
        Matrix coords = points(p);
        const double residual = equal_weight_residual(coords, t);
        best = std::min(best, residual);
        if (options.verbose) std::fprintf(stderr, "orbit search attempt %d residual %.3e (best %.3e)\n", attempt, residual, best);
        if (residual < 1e3 * options.tolerance && well_separated(coords)) {
            return DesignSearchResult{std::move(coords), residual, iterations, attempt};
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<DesignSearchResult> find_rotation_base_design(const DesignSearchOptions& options) {
    const auto group = octahedral_rotations();
    if (group.size() != 24) throw Error("octahedral group generation failed");
    return find_orbit_design(group, 5, 15, options);
}

}  // namespace spherefit

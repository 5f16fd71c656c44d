#include "spherefit/numerics.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "spherefit/errors.hpp"
#include "spherefit/random.hpp"

namespace spherefit {

double asymmetry(const Matrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    const double scale = a.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 0.0;
    return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

namespace {

void require_symmetric(const Matrix& a) {
    if (a.rows() != a.cols()) throw Error("matrix is not square");
    if (asymmetry(a) > 1e-10) throw Error("matrix is not symmetric");
}

}  // namespace

SpdSolve solve_spd(const Matrix& a, const Vector& b, double shift) {
    require_symmetric(a);
    if (b.size() != a.rows()) throw Error("right-hand side length mismatch");
    if (shift < 0.0) throw Error("shift must be nonnegative");
    Matrix m = a;
    m.diagonal().array() += shift;

    SpdSolve out;
    Eigen::LLT<Matrix> llt(m);
    if (llt.info() == Eigen::Success) {
        out.x = llt.solve(b);
        out.rcond = llt.rcond();
        out.ill_conditioned = out.rcond < 1e-12;
    } else {
        Eigen::LDLT<Matrix> ldlt(m);
        out.x = ldlt.solve(b);
        out.rcond = ldlt.rcond();
        out.ill_conditioned = true;
        if (!out.x.allFinite()) out.x = m.completeOrthogonalDecomposition().solve(b);
    }
    const double bn = b.norm();
    out.relative_residual = bn > 0.0 ? (m * out.x - b).norm() / bn : (m * out.x).norm();
    return out;
}

SymmetricEigenDecomposition sym_eig(const Matrix& a) {
    require_symmetric(a);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    if (solver.info() != Eigen::Success) throw Error("symmetric eigensolver did not converge");
    const Eigen::Index n = a.rows();
    SymmetricEigenDecomposition out;
    out.eigenvalues = solver.eigenvalues().reverse();
    out.eigenvectors = solver.eigenvectors().rowwise().reverse();
    (void)n;
    return out;
}

double largest_eigenvalue(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) throw Error("matrix is not square");
    if (a.rows() == 0) return 0.0;
    RandomStream rng(0x5eed);
    Vector v(a.rows());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = 0.5 + rng.uniform();
    v.normalize();
    double estimate = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        const Vector w = a * v;
        const double wn = w.norm();
        if (wn == 0.0) return 0.0;
        const double rayleigh = v.dot(w);
        v = w / wn;
        if (iter > 0 && std::abs(rayleigh - estimate) <= tol * std::abs(rayleigh)) return rayleigh;
        estimate = rayleigh;
    }
    return estimate;
}

double condition_number(const Matrix& a) {
    const auto eig = sym_eig(a);
    const double hi = eig.eigenvalues[0];
    const double lo = eig.eigenvalues[eig.size() - 1];
    if (!(lo > 0.0)) return std::numeric_limits<double>::infinity();
    return hi / lo;
}

namespace {

// Minimum-norm least squares restricted to the columns in `passive`.
Vector passive_solve(const Matrix& a, const Vector& b, const std::vector<Eigen::Index>& passive) {
    Vector full = Vector::Zero(a.cols());
    if (passive.empty()) return full;
    Matrix sub(a.rows(), static_cast<Eigen::Index>(passive.size()));
    for (std::size_t k = 0; k < passive.size(); ++k) sub.col(static_cast<Eigen::Index>(k)) = a.col(passive[k]);
    const Vector z = sub.completeOrthogonalDecomposition().solve(b);
    for (std::size_t k = 0; k < passive.size(); ++k) full[passive[k]] = z[static_cast<Eigen::Index>(k)];
    return full;
}

}  // namespace

NnlsResult nnls(const Matrix& a, const Vector& b, int max_iterations) {
    if (b.size() != a.rows()) throw Error("nnls: right-hand side length mismatch");
    if (!a.allFinite() || !b.allFinite()) throw Error("nnls: non-finite input");
    const Eigen::Index n = a.cols();
    if (max_iterations < 0) max_iterations = static_cast<int>(10 * n);
    const double scale = std::max(a.norm() * b.norm(), std::numeric_limits<double>::min());
    const double grad_tol = 1e-13 * scale;

    NnlsResult out;
    std::vector<bool> in_passive(static_cast<std::size_t>(n), false);
    auto passive_list = [&] {
        std::vector<Eigen::Index> p;
        for (Eigen::Index j = 0; j < n; ++j)
            if (in_passive[static_cast<std::size_t>(j)]) p.push_back(j);
        return p;
    };

    // Warm start from the clipped minimum-norm solution.
    Vector x = a.completeOrthogonalDecomposition().solve(b);
    for (Eigen::Index j = 0; j < n; ++j) {
        if (x[j] > 0.0) {
            in_passive[static_cast<std::size_t>(j)] = true;
        } else {
            x[j] = 0.0;
        }
    }

    // Moves x toward the passive-set minimizer while staying feasible.
    // Returns false when the iteration budget is exhausted.
    auto settle = [&](Eigen::Index just_added) {
        while (true) {
            if (++out.iterations > max_iterations) return false;
            Vector z = passive_solve(a, b, passive_list());
            double alpha = 1.0;
            bool blocked = false;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (!in_passive[static_cast<std::size_t>(j)] || z[j] > 0.0) continue;
                blocked = true;
                const double denom = x[j] - z[j];
                const double step = denom > 0.0 ? x[j] / denom : 0.0;
                alpha = std::min(alpha, step);
            }
            if (!blocked) {
                x = z;
                return true;
            }
            x += alpha * (z - x);
            for (Eigen::Index j = 0; j < n; ++j) {
                const auto uj = static_cast<std::size_t>(j);
                if (in_passive[uj] && (x[j] <= 0.0 || (z[j] <= 0.0 && std::abs(x[j]) <= 1e-15 * (1.0 + x.cwiseAbs().maxCoeff())))) {
                    in_passive[uj] = false;
                    x[j] = 0.0;
                }
            }
            if (just_added >= 0 && !in_passive[static_cast<std::size_t>(just_added)] && alpha == 0.0) {
                // degenerate step on the column that was just freed; accept the current point
                return true;
            }
        }
    };

    if (!settle(-1)) out.converged = false;

    std::vector<bool> rejected(static_cast<std::size_t>(n), false);
    while (out.converged) {
        const Vector grad = a.transpose() * (b - a * x);
        Eigen::Index best = -1;
        double best_value = grad_tol;
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            if (!in_passive[uj] && !rejected[uj] && grad[j] > best_value) {
                best_value = grad[j];
                best = j;
            }
        }
        if (best < 0) break;
        in_passive[static_cast<std::size_t>(best)] = true;
        if (!settle(best)) {
            out.converged = false;
            break;
        }
        if (!in_passive[static_cast<std::size_t>(best)]) rejected[static_cast<std::size_t>(best)] = true;
        else std::fill(rejected.begin(), rejected.end(), false);
    }

    out.x = x;
    out.residual_norm = (a * x - b).norm();
    return out;
}

double nnls_kkt_violation(const Matrix& a, const Vector& b, const Vector& x) {
    const double scale = std::max(a.norm() * b.norm(), std::numeric_limits<double>::min());
    const Vector grad = a.transpose() * (b - a * x);
    double worst = 0.0;
    for (Eigen::Index j = 0; j < x.size(); ++j) {
        worst = std::max(worst, std::max(0.0, -x[j]));
        if (x[j] > 0.0) {
            worst = std::max(worst, std::abs(grad[j]) / scale);
        } else {
            worst = std::max(worst, std::max(0.0, grad[j]) / scale);
        }
    }
    return worst;
}

}  // namespace spherefit

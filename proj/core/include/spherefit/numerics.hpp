#pragma once

#include "spherefit/linalg.hpp"

namespace spherefit {

/// Result of solve_spd. `ill_conditioned` is set when the shifted matrix is
/// not numerically positive definite or its reciprocal condition estimate is
/// below 1e-12; `x` is then a best-effort solution.
struct SpdSolve {
    Vector x;
    bool ill_conditioned = false;
    double rcond = 0.0;
    double relative_residual = 0.0;
};

/// Relative asymmetry max|A - A^T| / max|A| (0 for the zero matrix).
double asymmetry(const Matrix& a);

/// Solves (A + shift I) x = b for symmetric positive semidefinite A.
/// Throws if A is not symmetric within 1e-10 relative.
SpdSolve solve_spd(const Matrix& a, const Vector& b, double shift = 0.0);

/// Eigenvalues sorted descending; column i of `eigenvectors` pairs with
/// eigenvalue i.
struct SymmetricEigenDecomposition {
    Vector eigenvalues;
    Matrix eigenvectors;

    Eigen::Index size() const { return eigenvalues.size(); }
};

SymmetricEigenDecomposition sym_eig(const Matrix& a);

/// Power iteration on a PSD matrix with a Rayleigh-quotient estimate, stopped
/// when the relative change drops below `tol`. The estimate never exceeds the
/// true top eigenvalue.
double largest_eigenvalue(const Matrix& a, double tol = 1e-8);

/// lambda_max / lambda_min from a full eigendecomposition; +inf when the
/// smallest eigenvalue is not positive.
double condition_number(const Matrix& a);

struct NnlsResult {
    Vector x;
    bool converged = true;
    int iterations = 0;
    double residual_norm = 0.0;
};

/// Lawson-Hanson active-set solver for min |A x - b| subject to x >= 0.
///
/// The passive-set least squares subproblems take the minimum-norm solution,
/// and the iteration is warm started from the projection of the unconstrained
/// minimum-norm solution. For underdetermined systems this returns the dense
/// exact solution when one is nonnegative, instead of a sparse vertex.
/// Stops after `max_iterations` (default 10 * cols) with `converged = false`.
NnlsResult nnls(const Matrix& a, const Vector& b, int max_iterations = -1);

/// Largest violation of the NNLS optimality conditions: negativity of x,
/// positive gradient on the active set, nonzero gradient on the passive set.
/// The gradient A^T (b - A x) is scaled by |A|_F |b|.
double nnls_kkt_violation(const Matrix& a, const Vector& b, const Vector& x);

}  // namespace spherefit

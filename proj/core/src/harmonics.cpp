#include "spherefit/harmonics.hpp"

#include <cmath>
#include <vector>

#include "spherefit/errors.hpp"

namespace spherefit {

std::int64_t zdim(int d, int k) {
    if (d < 2) throw Error("zdim needs sphere dimension d >= 2");
    if (k < 0) throw Error("zdim needs degree k >= 0");
    if (k == 0) return 1;
    // Z(d,k) = (2k+d-1)/(k+d-1) * C(k+d-1, k) = (2k+d-1) * C(k+d-2, k) / (d-1)
    std::int64_t binom = 1;
    for (int i = 1; i <= d - 2; ++i) binom = binom * (k + i) / i;  // C(k+d-2, d-2)
    return binom * (2 * k + d - 1) / (d - 1);
}

double legendre_p(int k, double u) {
    if (k < 0) throw Error("Legendre degree must be nonnegative");
    if (!(std::abs(u) <= 1.0)) throw Error("Legendre argument outside [-1, 1]");
    if (k == 0) return 1.0;
    double prev = 1.0;
    double cur = u;
    for (int n = 1; n < k; ++n) {
        const double next = ((2.0 * n + 1.0) * u * cur - n * prev) / (n + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

// Writes Y_{k,l}(x, y, z) for k <= s. The associated Legendre part is carried
// without its sin^m(theta) factor; that factor is folded into Re/Im (x+iy)^m,
// which keeps the recurrences free of divisions and regular at the poles.
void evaluate_harmonics(double x, double y, double z, int s, double* out) {
    if (s < 0) throw Error("harmonic degree must be nonnegative");
    const double sqrt2 = std::sqrt(2.0);
    double qmm = 1.0;  // q_m^m
    double cm = 1.0;   // Re (x+iy)^m
    double sm = 0.0;   // Im (x+iy)^m
    for (int m = 0; m <= s; ++m) {
        if (m > 0) {
            qmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
            const double c = cm * x - sm * y;
            sm = cm * y + sm * x;
            cm = c;
        }
        double q_km2 = 0.0;
        double q_km1 = qmm;
        for (int k = m; k <= s; ++k) {
            double q;
            if (k == m) {
                q = qmm;
            } else if (k == m + 1) {
                q = std::sqrt(2.0 * m + 3.0) * z * qmm;
            } else {
                const double kk = k;
                const double mm = m;
                const double a = std::sqrt((4.0 * kk * kk - 1.0) / (kk * kk - mm * mm));
                const double b = std::sqrt(((kk - 1.0) * (kk - 1.0) - mm * mm) / (4.0 * (kk - 1.0) * (kk - 1.0) - 1.0));
                q = a * (z * q_km1 - b * q_km2);
            }
            if (k > m) {
                q_km2 = q_km1;
                q_km1 = q;
            }
            if (m == 0) {
                out[HarmonicBasisMatrix::row(k, 0)] = q;
            } else {
                out[HarmonicBasisMatrix::row(k, 2 * m - 1)] = sqrt2 * q * cm;
                out[HarmonicBasisMatrix::row(k, 2 * m)] = sqrt2 * q * sm;
            }
        }
    }
}

HarmonicBasisMatrix harmonic_basis(const PointSet& points, int s) {
    if (points.sphere_dim() != 2) throw UnsupportedDimensionError("spherical harmonics are implemented for S^2 only");
    if (s < 0) throw Error("harmonic degree must be nonnegative");
    HarmonicBasisMatrix basis;
    basis.degree_s = s;
    const Eigen::Index rows = static_cast<Eigen::Index>(s + 1) * (s + 1);
    basis.values.resize(rows, static_cast<Eigen::Index>(points.size()));
    const Matrix& x = points.coords();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        evaluate_harmonics(x(0, j), x(1, j), x(2, j), s, basis.values.col(j).data());
    }
    return basis;
}

}  // namespace spherefit

#include <doctest.h>

#include <cmath>

#include "spherefit/errors.hpp"
#include "spherefit/harmonics.hpp"
#include "test_support.hpp"

using namespace spherefit;

TEST_CASE("harmonic space dimension") {
    CHECK(zdim(2, 0) == 1);
    CHECK(zdim(2, 1) == 3);
    CHECK(zdim(2, 5) == 11);
    CHECK(zdim(3, 2) == 9);
    CHECK_THROWS_AS(zdim(1, 3), Error);
}

TEST_CASE("legendre values") {
    for (int k = 0; k <= 50; ++k) CHECK(legendre_p(k, 1.0) == 1.0);
    CHECK(legendre_p(1, 0.3) == doctest::Approx(0.3));
    CHECK(legendre_p(2, 0.5) == doctest::Approx(-0.125));
    CHECK_THROWS_AS(legendre_p(3, 1.5), Error);
}

TEST_CASE("legendre stays bounded") {
    for (int k = 0; k <= 100; ++k)
        for (int i = 0; i <= 400; ++i) REQUIRE(std::abs(legendre_p(k, -1.0 + i / 200.0)) <= 1.0 + 1e-12);
}

TEST_CASE("basis shape and constant row") {
    const auto p = sample_random(3, 2);
    const auto v = harmonic_basis(p, 1);
    CHECK(v.values.rows() == 4);
    CHECK(v.values.cols() == 3);
    const auto c = harmonic_basis(sample_random(20, 3), 0);
    CHECK(c.values.rows() == 1);
    CHECK((c.values.array() == 1.0).all());
}

TEST_CASE("basis is orthonormal on a design") {
    const auto d = testing::design(11);
    const auto v = harmonic_basis(d, 5);
    const Matrix gram = v.values * v.values.transpose() / static_cast<double>(d.size());
    CHECK((gram - Matrix::Identity(36, 36)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("addition theorem") {
    const auto p = sample_random(20, 8);
    const int s = 20;
    const auto v = harmonic_basis(p, s);
    for (std::size_t a = 0; a + 1 < p.size(); a += 2) {
        const double u = p.column(a).dot(p.column(a + 1));
        for (int k = 0; k <= s; ++k) {
            double sum = 0.0;
            for (int l = 0; l < 2 * k + 1; ++l) {
                const auto r = HarmonicBasisMatrix::row(k, l);
                sum += v.values(r, static_cast<Eigen::Index>(a)) * v.values(r, static_cast<Eigen::Index>(a + 1));
            }
            REQUIRE(sum == doctest::Approx(zdim(2, k) * legendre_p(k, u)).epsilon(1e-8).scale(1.0));
        }
    }
}

TEST_CASE("only S^2 is supported") {
    Matrix four(4, 2);
    four << 1, 0, 0, 1, 0, 0, 0, 0;
    CHECK_THROWS_AS(harmonic_basis(PointSet(four), 2), UnsupportedDimensionError);
}

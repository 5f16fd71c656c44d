#include <doctest.h>

#include <cmath>

#include "spherefit/errors.hpp"
#include "spherefit/numerics.hpp"
#include "test_support.hpp"

using namespace spherefit;

TEST_CASE("solve_spd examples") {
    const Vector b = testing::random_vector(5, 1);
    CHECK(solve_spd(Matrix::Identity(5, 5), b).x.isApprox(b));

    Matrix a = Vector(Eigen::Vector2d(2, 3)).asDiagonal();
    const auto r = solve_spd(a, Eigen::Vector2d(2, 3), 1.0);
    CHECK(r.x[0] == doctest::Approx(2.0 / 3.0));
    CHECK(r.x[1] == doctest::Approx(0.75));
    CHECK_FALSE(r.ill_conditioned);

    const auto z = solve_spd(Matrix::Zero(2, 2), Eigen::Vector2d(1, 1));
    CHECK(z.ill_conditioned);

    Matrix skew(2, 2);
    skew << 1, 0.5, 0, 1;
    CHECK_THROWS_AS(solve_spd(skew, Eigen::Vector2d(1, 1)), Error);
}

TEST_CASE("solve_spd meets its residual on moderate conditioning") {
    const Matrix a = testing::random_psd(60, 3, 1e-3);
    const Vector b = testing::random_vector(60, 4);
    const auto r = solve_spd(a, b);
    CHECK((a * r.x - b).norm() / b.norm() <= 1e-8);
}

TEST_CASE("sym_eig examples") {
    const auto i3 = sym_eig(Matrix::Identity(3, 3));
    CHECK(i3.eigenvalues.isApprox(Vector::Ones(3)));
    const auto d = sym_eig(Vector(Eigen::Vector3d(3, 1, 2)).asDiagonal().toDenseMatrix());
    CHECK(d.eigenvalues.isApprox(Eigen::Vector3d(3, 2, 1)));
}

TEST_CASE("sym_eig reconstruction and orthogonality") {
    Matrix a = testing::random_psd(50, 7);
    a -= 0.5 * Matrix::Identity(50, 50);
    const auto e = sym_eig(a);
    const Matrix back = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.transpose();
    CHECK((back - a).norm() <= 1e-8 * a.norm());
    CHECK((e.eigenvectors.transpose() * e.eigenvectors - Matrix::Identity(50, 50)).cwiseAbs().maxCoeff() <= 1e-10);
    for (Eigen::Index i = 1; i < e.size(); ++i) REQUIRE(e.eigenvalues[i - 1] >= e.eigenvalues[i]);
}

TEST_CASE("solve_spd agrees with the eigen form") {
    const Matrix a = testing::random_psd(40, 9, 1e-4);
    const Vector b = testing::random_vector(40, 10);
    const auto e = sym_eig(a);
    const Vector x = e.eigenvectors * (e.eigenvectors.transpose() * b).cwiseQuotient(e.eigenvalues);
    CHECK((x - solve_spd(a, b).x).norm() <= 1e-6 * x.norm());
}

TEST_CASE("largest eigenvalue") {
    CHECK(largest_eigenvalue(Vector(Eigen::Vector2d(5, 1)).asDiagonal().toDenseMatrix()) ==
          doctest::Approx(5.0).epsilon(1e-8));
    const Vector v = testing::random_vector(30, 2);
    CHECK(largest_eigenvalue(v * v.transpose()) == doctest::Approx(v.squaredNorm()).epsilon(1e-8));
    const Matrix a = testing::random_psd(100, 5);
    const double top = sym_eig(a).eigenvalues[0];
    const double hat = largest_eigenvalue(a, 1e-10);
    CHECK(hat == doctest::Approx(top).epsilon(1e-6));
    CHECK(largest_eigenvalue(Matrix::Zero(4, 4)) == 0.0);
}

TEST_CASE("condition number") {
    const Matrix a = testing::random_psd(30, 3, 0.1);
    const double c = condition_number(a);
    CHECK(c >= 1.0);
    CHECK(condition_number(7.5 * a) == doctest::Approx(c).epsilon(1e-8));
    CHECK(condition_number(Matrix::Identity(3, 3)) == doctest::Approx(1.0));
}

TEST_CASE("nnls examples") {
    CHECK(nnls(Matrix::Identity(2, 2), Eigen::Vector2d(1, -1)).x.isApprox(Eigen::Vector2d(1, 0)));
    const auto one = nnls(Matrix::Ones(2, 1), Vector::Ones(2));
    CHECK(one.x[0] == doctest::Approx(1.0));
}

TEST_CASE("nnls satisfies KKT on random systems") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        RandomStream rng(seed, 21);
        Matrix a(50, 20);
        for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = rng.normal();
        Vector b(50);
        for (Eigen::Index i = 0; i < b.size(); ++i) b[i] = rng.normal();
        const auto r = nnls(a, b);
        CHECK(r.converged);
        CHECK((r.x.array() >= 0.0).all());
        CHECK(nnls_kkt_violation(a, b, r.x) <= 1e-10);
        // primal feasibility and complementary slackness, checked by hand
        const Vector grad = a.transpose() * (b - a * r.x);
        for (Eigen::Index j = 0; j < r.x.size(); ++j) {
            if (r.x[j] > 0) REQUIRE(std::abs(grad[j]) <= 1e-9);
            else REQUIRE(grad[j] <= 1e-9);
        }
    }
}

#include <doctest.h>

#include <cmath>

#include "spherefit/errors.hpp"
#include "spherefit/estimator.hpp"
#include "spherefit/metrics.hpp"
#include "spherefit/noise.hpp"
#include "test_support.hpp"

using namespace spherefit;

namespace {

const KernelSpec kWendland = KernelSpec::wendland_4_1();

LabeledData clean_data(const PointSet& p) {
    Vector f = target_function(p);
    return LabeledData(p, f, f);
}

}  // namespace

TEST_CASE("ki on trivial systems") {
    const PointSet axes(Matrix(Matrix::Identity(3, 3)));
    const Vector y(Eigen::Vector3d(0.5, -2, 3));
    CHECK(fit_ki(LabeledData(axes, y), kWendland).coefficients.isApprox(y));
    const PointSet one(Matrix(Vector::Unit(3, 1)));
    CHECK(fit_ki(LabeledData(one, Vector::Constant(1, 4.0)), kWendland).coefficients[0] == doctest::Approx(4.0));
}

TEST_CASE("ki interpolates") {
    const auto d = testing::design(19);
    const auto data = clean_data(d);
    const auto model = fit_ki(data, kWendland);
    CHECK(model.method_tag == "ki");
    CHECK((evaluate(model, d) - data.values).cwiseAbs().maxCoeff() <= 1e-6 * data.values.cwiseAbs().maxCoeff());
    CHECK(model.diagnostics.computed());
    CHECK(model.diagnostics.cnkm >= 1.0);
}

TEST_CASE("evaluate basics") {
    const auto p = sample_random(20, 2);
    FittedModel m{kWendland, p, Vector::Zero(20), "ki", std::nan(""), {}};
    CHECK(evaluate(m, sample_random(10, 3)).isZero());

    // all centers near the north pole, query at the south pole
    Matrix c(3, 3);
    c << 0, 0.1, 0, 0, 0, 0.1, 1, 1, 1;
    FittedModel near{kWendland, PointSet(c), Vector::Ones(3), "ki", std::nan(""), {}};
    CHECK(evaluate(near, PointSet(Matrix(-Vector::Unit(3, 2))))[0] == 0.0);
}

TEST_CASE("tiny tikhonov reproduces ki") {
    const auto d = testing::design(15);
    const auto data = clean_data(d);
    const auto rule = auto_rule(d, default_degree_hint(d));
    const auto test = sample_random(1000, 11);
    const Vector ki = evaluate(fit_ki(data, kWendland), test);
    const Vector wsf = evaluate(fit_wsf(data, kWendland, rule, FilterSpec::tikhonov(1e-12)), test);
    CHECK(rmse(wsf, ki) <= 1e-4);
}

TEST_CASE("weighted identity through the eigen form") {
    const auto p = sample_random(50, 12);
    const auto rule = compute_weights(p, 0);
    const Matrix phi = kernel_matrix(kWendland, p);
    const Vector sw = rule.weights.cwiseSqrt();
    const Matrix psi = sw.asDiagonal() * phi * sw.asDiagonal();
    const auto eig = sym_eig(psi);
    const Vector y = testing::random_vector(50, 1);
    const Vector inv = eig.eigenvectors * (eig.eigenvectors.transpose() * sw.cwiseProduct(y)).cwiseQuotient(eig.eigenvalues);
    const Vector a = sw.cwiseProduct(inv);
    const Vector direct = solve_spd(phi, y).x;
    CHECK((a - direct).norm() <= 1e-6 * direct.norm());
}

TEST_CASE("cutoff above the spectrum gives the zero model") {
    const auto d = testing::design(7);
    const auto rule = tdesign_rule(d, 7);
    const WsfSystem sys(kWendland, rule);
    const auto m = sys.fit(FilterSpec::cutoff(2 * sys.kappa()), target_function(d));
    CHECK(m.coefficients.isZero());
}

TEST_CASE("fit_wsf checks its inputs") {
    const auto d = testing::design(7);
    const auto other = testing::design(11);
    const auto rule = tdesign_rule(other, 11);
    CHECK_THROWS_AS(fit_wsf(clean_data(d), kWendland, rule, FilterSpec::tikhonov(0.1)), Error);
    CHECK_THROWS_AS(fit_wsf_noise_free(LabeledData(d, target_function(d)), kWendland, tdesign_rule(d, 7),
                                       FilterSpec::tikhonov(0.1)),
                    Error);
}

TEST_CASE("stability and fitting errors") {
    const auto d = testing::design(15);
    const auto rule = tdesign_rule(d, 15);
    const auto test = sample_random(2000, 5);
    const Vector truth = target_function(test);
    const Vector f = target_function(d);
    const auto spec = FilterSpec::tikhonov(1e-3);

    const LabeledData quiet(d, f, f);
    CHECK(evaluate(fit_wsf(quiet, kWendland, rule, spec), test) ==
          evaluate(fit_wsf_noise_free(quiet, kWendland, rule, spec), test));

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const LabeledData noisy(d, f + gen_noise({0.5, 2.5, seed, 2}, d.size()), f);
        const Vector fn = evaluate(fit_wsf(noisy, kWendland, rule, spec), test);
        const Vector f0 = evaluate(fit_wsf_noise_free(noisy, kWendland, rule, spec), test);
        const double stability = rmse(fn, f0), fitting = rmse(f0, truth), approx = rmse(fn, truth);
        CHECK(stability > 0.0);
        CHECK(approx <= stability + fitting + 1e-9);
    }
}

TEST_CASE("rotation equivariance") {
    const auto p = sample_random(150, 21);
    const auto q = sample_random(200, 22);
    const Matrix r = testing::rotation(0.4, -1.2, 2.0);
    const auto rule = auto_rule(p, default_degree_hint(p));
    QuadratureRule rotated = rule;
    rotated.points = p.transformed(r);
    const Vector y = target_function(p);
    const auto spec = FilterSpec::tikhonov(1e-4);
    const Vector a = evaluate(fit_wsf(LabeledData(p, y), kWendland, rule, spec), q);
    const Vector b = evaluate(fit_wsf(LabeledData(rotated.points, y), kWendland, rotated, spec), q.transformed(r));
    CHECK((a - b).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("conditioning reports") {
    CHECK(conditioning(Matrix(Matrix::Identity(4, 4))).cnkm == doctest::Approx(1.0));
    const auto d = conditioning(Matrix(Vector(Eigen::Vector2d(4, 1)).asDiagonal()));
    CHECK(d.cnkm == doctest::Approx(4.0));
    CHECK(d.sigma_min <= d.sigma_max);
}

TEST_CASE("kernel matrix on the largest design is badly conditioned") {
    const auto d = testing::design(47);
    const auto c = conditioning(kernel_matrix(kWendland, d));
    MESSAGE("cnkm of the t=47 kernel matrix: " << c.cnkm);
    CHECK(c.cnkm >= 1e3);
}

TEST_CASE("filtered conditioning is nonincreasing in the parameter") {
    const auto d = testing::design(15);
    const WsfSystem sys(kWendland, tdesign_rule(d, 15));
    const double kappa = sys.kappa();
    for (auto family : {FilterFamily::tikhonov, FilterFamily::cutoff}) {
        double prev = std::numeric_limits<double>::infinity();
        for (double rel : {1e-6, 1e-4, 1e-3, 1e-2, 0.1, 0.5, 1.0}) {
            const double c = sys.diagnostics(FilterSpec::make(family, rel * kappa)).cnkm;
            CHECK(c <= prev * (1 + 1e-10));
            CHECK(c >= 1.0);
            prev = c;
        }
    }
    double prev = std::numeric_limits<double>::infinity();
    for (int l : {2000, 300, 50, 10, 3, 1}) {
        const double c = sys.diagnostics(FilterSpec::landweber_steps(l)).cnkm;
        CHECK(c <= prev * (1 + 1e-10));
        prev = c;
    }
}

TEST_CASE("model round trip") {
    const auto d = testing::design(7);
    const auto m = WsfSystem(kWendland, tdesign_rule(d, 7)).fit(FilterSpec::cutoff(1e-3), target_function(d));
    const auto path = testing::temp_path("model.txt");
    write_model(path, m);
    const auto back = read_model(path);
    CHECK(back.method_tag == m.method_tag);
    CHECK(back.param == m.param);
    CHECK(back.coefficients == m.coefficients);
    CHECK(back.centers.coords() == m.centers.coords());
}

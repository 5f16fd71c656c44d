#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>

#include "spherefit/errors.hpp"
#include "spherefit/geometry.hpp"
#include "spherefit/point_io.hpp"
#include "test_support.hpp"

using namespace spherefit;
using std::numbers::pi;

namespace {

PointSet points(std::initializer_list<std::array<double, 3>> rows) {
    Matrix m(3, static_cast<Eigen::Index>(rows.size()));
    Eigen::Index j = 0;
    for (const auto& r : rows) m.col(j++) << r[0], r[1], r[2];
    return PointSet(m);
}

}  // namespace

TEST_CASE("geodesic distance on simple pairs") {
    const SpherePoint x(1, 0, 0), y(0, 1, 0), z(-1, 0, 0);
    CHECK(geodesic_distance(x, x) == doctest::Approx(0.0));
    CHECK(geodesic_distance(x, y) == doctest::Approx(pi / 2));
    CHECK(geodesic_distance(x, z) == doctest::Approx(pi));
}

TEST_CASE("geodesic distance is a metric on random triples") {
    const auto p = sample_random(300, 17);
    for (std::size_t i = 0; i + 2 < p.size(); i += 3) {
        const auto a = p.point(i), b = p.point(i + 1), c = p.point(i + 2);
        CHECK(geodesic_distance(a, b) == doctest::Approx(geodesic_distance(b, a)).epsilon(1e-14));
        CHECK(geodesic_distance(a, a) == doctest::Approx(0.0));
        CHECK(geodesic_distance(a, c) <= geodesic_distance(a, b) + geodesic_distance(b, c) + 1e-12);
    }
}

TEST_CASE("mesh norm examples") {
    CHECK(mesh_norm(points({{0, 0, 1}})) == doctest::Approx(pi).epsilon(0.01));
    CHECK(mesh_norm(points({{0, 0, 1}, {0, 0, -1}})) == doctest::Approx(pi / 2).epsilon(0.01));

    const double g = std::numbers::phi;
    Matrix ico(3, 12);
    int j = 0;
    for (double s1 : {-1.0, 1.0})
        for (double s2 : {-g, g}) {
            ico.col(j++) << 0, s1, s2;
            ico.col(j++) << s1, s2, 0;
            ico.col(j++) << s2, 0, s1;
        }
    // vertex to face centre angle of the icosahedron
    CHECK(mesh_norm(PointSet(ico)) == doctest::Approx(0.652358139784368).epsilon(0.01));
}

TEST_CASE("mesh norm is a lower bound that grows with resolution") {
    const auto p = sample_random(40, 3);
    const double coarse = mesh_norm(p, 20);
    const double fine = mesh_norm(p, 200);
    CHECK(coarse <= fine + 1e-3);
    CHECK(fine > 0.0);
}

TEST_CASE("separation radius") {
    CHECK(separation_radius(points({{1, 0, 0}, {-1, 0, 0}})) == doctest::Approx(pi / 2));
    CHECK(separation_radius(points({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})) == doctest::Approx(pi / 4));
    CHECK_THROWS_AS(separation_radius(points({{1, 0, 0}})), Error);

    const auto d = testing::design(3);
    double best = 10.0;
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t k = i + 1; k < d.size(); ++k)
            best = std::min(best, std::acos(std::clamp(d.column(i).dot(d.column(k)), -1.0, 1.0)));
    CHECK(separation_radius(d) == doctest::Approx(best / 2).epsilon(1e-12));
}

TEST_CASE("point sets reject duplicates and zero vectors") {
    CHECK_THROWS_AS(points({{1, 0, 0}, {2, 0, 0}}), Error);
    CHECK_THROWS_AS(points({{0, 0, 0}}), Error);
}

TEST_CASE("random sampling") {
    const auto one = sample_random(1, 5);
    CHECK(one.coords().col(0).norm() == doctest::Approx(1.0));

    const auto big = sample_random(10000, 9);
    CHECK(big.coords().rowwise().mean().norm() <= 0.05);
    for (Eigen::Index j = 0; j < big.coords().cols(); ++j)
        REQUIRE(big.coords().col(j).norm() == doctest::Approx(1.0).epsilon(1e-14));

    CHECK(sample_random(50, 4).coords() == sample_random(50, 4).coords());
    CHECK(sample_random(50, 4).coords() != sample_random(50, 5).coords());
    CHECK_THROWS_AS(sample_random(0, 1), Error);
}

TEST_CASE("shipped design sizes") {
    CHECK(testing::design(47).size() == 1130);
    CHECK(symmetric_design_size(47) == 1130);
    CHECK(shipped_design_size(testing::data_dir(), 7) == 32);
    CHECK(shipped_design_size(testing::data_dir(), 999) == symmetric_design_size(999));
    const auto f63 = design_file(testing::data_dir(), 63);
    if (std::filesystem::exists(f63)) {
        CHECK(load_tdesign(f63, 63, true).size() == 2016);
    }
}

TEST_CASE("shipped designs integrate their degree") {
    for (int t : {3, 7, 11, 15, 31, 45, 47}) {
        CAPTURE(t);
        CHECK(equal_weight_residual(testing::design(t).coords(), t) <= 1e-10);
    }
}

TEST_CASE("design loading errors") {
    const auto empty = testing::temp_path("empty.txt");
    std::ofstream(empty) << "# nothing\n";
    CHECK_THROWS_AS(load_tdesign(empty, 3), Error);

    const auto bad = testing::temp_path("bad.txt");
    std::ofstream(bad) << "1 0 0\n0 1 x\n";
    try {
        load_tdesign(bad, 1);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }

    const auto off = testing::temp_path("off.txt");
    std::ofstream(off) << "1 0 0\n0 1.01 0\n";
    CHECK_THROWS_AS(load_tdesign(off, 1), Error);
}

TEST_CASE("rotated designs") {
    const auto base = load_tdesign(rotation_base_file(testing::data_dir()), 15);
    CHECK(base.size() == 120);
    CHECK(equal_weight_residual(base.coords(), 15) <= 1e-10);
    CHECK((rotated_design(base, 0).coords() - base.coords()).cwiseAbs().maxCoeff() <= 1e-15);
    CHECK(rotated_design(base, 9).size() == 1200);
    CHECK_THROWS_AS(rotated_design(base, 20), Error);
    CHECK_THROWS_AS(rotated_design(base, -1), Error);

    const Vector e1 = Vector::Unit(3, 0);
    const Vector r = rotation_matrix(10) * e1;
    CHECK(r[0] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(r[1] == doctest::Approx(1.0));
    CHECK(r[2] == doctest::Approx(0.0));
}

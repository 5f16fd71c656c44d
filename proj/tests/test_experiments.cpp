#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "spherefit/errors.hpp"
#include "spherefit/experiments.hpp"
#include "spherefit/metrics.hpp"
#include "spherefit/noise.hpp"
#include "spherefit/point_io.hpp"
#include "spherefit/real_data.hpp"
#include "test_support.hpp"

using namespace spherefit;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ScenarioConfig small(const std::string& scenario) {
    auto c = default_config(scenario);
    c.trials = 2;
    c.test_size = 300;
    c.data_dir = testing::data_dir();
    c.validation_t = 11;
    return c;
}

}  // namespace

TEST_CASE("noise") {
    CHECK(gen_noise({0.0, 2.5, 1, 2}, 10).isZero());

    const Vector e = gen_noise({0.5, 2.5, 3, 2}, 100000);
    const double mean = e.mean();
    const double sd = std::sqrt((e.array() - mean).square().mean());
    CHECK(std::abs(mean) <= 0.02);
    CHECK(std::abs(sd - 0.5) <= 0.02);

    const Vector big = gen_noise({10.0, 2.5, 4, 2}, 10000);
    CHECK(big.cwiseAbs().maxCoeff() <= 2.5);
    CHECK((big.array().abs() == 2.5).count() > 7000);

    CHECK(gen_noise({0.5, 2.5, 3, 2}, 50) == gen_noise({0.5, 2.5, 3, 2}, 50));
    CHECK(gen_noise({0.5, 2.5, 3, 2}, 50) != gen_noise({0.5, 2.5, 4, 2}, 50));
}

TEST_CASE("metrics") {
    const Vector z = Vector::Zero(2);
    const Vector t(Eigen::Vector2d(3, 4));
    CHECK(rmse(z, z) == 0.0);
    CHECK(rmse(z, t) == doctest::Approx(std::sqrt(12.5)));
    CHECK(rmse(Vector::Constant(5, 1.0), Vector::Constant(5, -1.5)) == doctest::Approx(2.5));
    CHECK(sup_err(z, t) == 4.0);
    CHECK(sup_err(Vector::Constant(1, 2.0), Vector::Constant(1, -1.0)) == 3.0);
    CHECK_THROWS_AS(rmse(z, Vector::Zero(3)), Error);
    CHECK_THROWS_AS(sup_err(Vector(), Vector()), Error);
}

TEST_CASE("test set") {
    const auto ts = make_testset(4000, 1);
    CHECK(ts.points.size() == 4000);
    for (Eigen::Index j = 0; j < 4000; ++j) REQUIRE(ts.points.coords().col(j).norm() == doctest::Approx(1.0));
    CHECK(ts.truth == target_function(ts.points));
    CHECK(make_testset(100, 5).points.coords() == make_testset(100, 5).points.coords());
    CHECK_THROWS_AS(make_testset(0, 1), Error);
}

TEST_CASE("records round trip") {
    ExperimentRecord r;
    r.scenario = "sim4";
    r.sampler = "tdesign";
    r.n_train = 32;
    r.delta = 0.1;
    r.method = "cutoff";
    r.param = 1.0 / 3.0;
    r.trial = 2;
    r.rmse = 0.123456789012345678;
    r.sup_err = 0.5;
    r.cnkm = 12.0;
    r.wall_ms = 0;
    const auto path = testing::temp_path("records.csv");
    write_records(path, {r});
    CHECK(slurp(path).rfind(std::string(kRecordsHeader) + "\n", 0) == 0);
    const auto back = read_records(path);
    REQUIRE(back.size() == 1);
    CHECK(back[0].rmse == r.rmse);
    CHECK(back[0].param == r.param);
    CHECK(std::isnan(back[0].stability_err));
    CHECK(back[0].method == "cutoff");
}

TEST_CASE("averages") {
    std::vector<ExperimentRecord> rows;
    for (int t = 0; t < 2; ++t) {
        ExperimentRecord a;
        a.scenario = "s";
        a.method = "tikhonov";
        a.param = 0.1 * (t + 1);
        a.trial = t;
        a.rmse = t + 1.0;
        rows.push_back(a);
        for (double p : {1.0, 2.0}) {
            ExperimentRecord b = a;
            b.method = "sweep";
            b.param = p;
            b.rmse = p + t;
            rows.push_back(b);
        }
    }
    const auto out = with_averages(rows);
    REQUIRE(out.size() == rows.size() + 3);
    CHECK(out[6].method == "tikhonov");
    CHECK(out[6].trial == -1);
    CHECK(out[6].rmse == 1.5);
    CHECK(std::isnan(out[6].param));
    CHECK(out[7].param == 1.0);
    CHECK(out[7].rmse == 1.5);
    CHECK(out[8].param == 2.0);
    CHECK(out[8].rmse == 2.5);
}

TEST_CASE("lat lon ingestion") {
    const Vector a = latlon_to_unit(0, 0), b = latlon_to_unit(90, 37), c = latlon_to_unit(0, 90);
    CHECK(a.isApprox(Eigen::Vector3d(1, 0, 0)));
    CHECK(b == Eigen::Vector3d(0, 0, 1));
    CHECK((c - Eigen::Vector3d(0, 1, 0)).norm() <= 1e-15);

    const auto d = parse_latlon_csv("lat_deg,lon_deg,speed\n10,20,3.5\n-45,170,1\n", "speed");
    CHECK(d.size() == 2);
    CHECK(d.values[1] == 1.0);
    CHECK_THROWS_AS(parse_latlon_csv("lat_deg,lon_deg\n1,2\n", "value"), ParseError);
    CHECK_THROWS_AS(parse_latlon_csv("lat_deg,lon_deg,value\n1,2,x\n", "value"), ParseError);
    try {
        parse_latlon_csv("lat_deg,lon_deg,value\n1,2,3\n5,6,7\n1,2,4\n", "value");
        FAIL("expected duplicate rejection");
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('2') != std::string::npos);
        CHECK(msg.find('4') != std::string::npos);
    }
}

TEST_CASE("scenario output is deterministic and schedule independent") {
    auto c = small("sim4");
    c.plans = {{Sampler::tdesign, 7}, {Sampler::tdesign, 11}, {Sampler::random, 70}};
    c.deltas = {0.1, 0.5};
    const auto a = run_scenario(c);
    c.threads = 3;
    const auto b = run_scenario(c);
    const auto pa = testing::temp_path("det_a.csv"), pb = testing::temp_path("det_b.csv");
    write_records(pa, a);
    write_records(pb, b);
    CHECK(slurp(pa) == slurp(pb));
    for (const auto& r : a) CHECK(r.wall_ms == 0);
    // rows per cell: ki + three filters, two trials, then four averages
    CHECK(a.size() == 6 * 12);
    CHECK(a[8].trial == -1);
}

TEST_CASE("random training sets change between trials") {
    auto c = small("sim4");
    c.plans = {{Sampler::random, 60}};
    c.deltas = {0.1};
    c.families = {FilterFamily::tikhonov};
    const auto rows = run_scenario(c);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].rmse != rows[2].rmse);
}

TEST_CASE("sweep rows satisfy the decomposition") {
    auto c = small("sim1");
    c.plans = {{Sampler::rotation, 1}, {Sampler::tdesign, 15}};
    c.sweep_points = 5;
    const auto rows = run_scenario(c);
    CHECK(!rows.empty());
    for (const auto& r : rows) {
        REQUIRE(std::isfinite(r.stability_err));
        REQUIRE(r.rmse <= r.stability_err + r.fitting_err + 1e-9);
    }
}

TEST_CASE("missing designs become skipped rows") {
    auto c = small("sim4");
    c.plans = {{Sampler::tdesign, 5}, {Sampler::tdesign, 7}};
    c.deltas = {0.1};
    const auto rows = run_scenario(c);
    REQUIRE(!rows.empty());
    CHECK(rows.front().method == "skipped");
    CHECK(rows.size() == 1 + 12);
}

TEST_CASE("bound and oracle rows") {
    auto c5 = small("sim5");
    c5.plans = {{Sampler::tdesign, 11}};
    c5.deltas = {0.3};
    c5.families = {FilterFamily::tikhonov};
    bool bound = false;
    for (const auto& r : run_scenario(c5)) {
        if (r.method != "tikhonov_bound" || r.trial < 0) continue;
        bound = true;
        const double n = static_cast<double>(r.n_train);
        const double e = 1e-5;
        const double expect = 1.4 * (std::pow(r.param, -(1 + e) / 2) / std::sqrt(n) + std::pow(r.param, 0.75 - e / 2));
        CHECK(r.sup_err == doctest::Approx(expect).epsilon(1e-12));
    }
    CHECK(bound);

    auto c3 = small("sim3");
    c3.plans = {{Sampler::tdesign, 15}};
    c3.validation_t = 11;
    const auto rows = run_scenario(c3);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        if (rows[i].trial < 0 || rows[i].method.find("_oracle") != std::string::npos) continue;
        REQUIRE(rows[i + 1].method == rows[i].method + "_oracle");
        CHECK(rows[i + 1].rmse <= rows[i].rmse);
    }
}

TEST_CASE("prediction dumps") {
    auto c = small("sim6");
    c.plans = {{Sampler::tdesign, 7}};
    c.deltas = {0.3};
    c.trials = 1;
    const auto prefix = testing::temp_path("viz");
    c.prediction_prefix = prefix;
    run_scenario(c);
    const auto f = prefix.parent_path() / "viz_tdesign7_delta0.3_cutoff.csv";
    REQUIRE(std::filesystem::exists(f));
    const auto text = slurp(f);
    CHECK(text.rfind("x,y,z,truth,prediction\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 301);
    CHECK(std::filesystem::exists(prefix.parent_path() / "viz_tdesign7_delta0.3_train.csv"));
}

TEST_CASE("real data pipeline") {
    const auto path = testing::temp_path("field.csv");
    {
        std::ofstream out(path);
        out << "lat_deg,lon_deg,value\n";
        const auto p = sample_random(240, 77);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const auto c = p.column(i);
            const double lat = std::asin(c[2]) * 180 / std::numbers::pi;
            const double lon = std::atan2(c[1], c[0]) * 180 / std::numbers::pi;
            out << format_real(lat) << ',' << format_real(lon) << ',' << format_real(1.0 - c[2] * c[2]) << '\n';
        }
    }
    RealDataConfig c;
    c.train_csv = path;
    c.delta = 0.05;
    c.clamp_zero = true;
    c.trials = 2;
    c.families = {FilterFamily::tikhonov};
    const auto rows = run_real_data(c);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].n_train == 192);
    CHECK(rows.back().trial == -1);
    for (const auto& r : rows) CHECK(r.rmse < 0.5);
    const auto again = run_real_data(c);
    CHECK(again[1].rmse == rows[1].rmse);
}

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spherefit/filters.hpp"
#include "spherefit/geometry.hpp"
#include "spherefit/records.hpp"

namespace spherefit {

enum class Sampler { random, tdesign, rotation };

std::string sampler_name(Sampler s);
Sampler sampler_from_name(std::string_view name);

/// Test inputs drawn uniformly in [-1,1]^3 and projected to the sphere, with
/// targets f*(x).
struct TestSet {
    PointSet points;
    Vector truth;
};

TestSet make_testset(std::size_t n, std::uint64_t seed);

/// One training configuration: `size` is t for tdesign, the number of
/// rotations k for rotation (120 (k+1) points) and n for random.
struct SamplePlan {
    Sampler sampler = Sampler::tdesign;
    int size = 0;
};

struct ScenarioConfig {
    std::string scenario;  // sim1 .. sim6
    std::vector<SamplePlan> plans;
    std::vector<double> deltas;
    std::vector<FilterFamily> families{FilterFamily::tikhonov, FilterFamily::landweber, FilterFamily::cutoff};
    bool include_ki = true;
    int trials = 5;
    std::uint64_t seed = 1;
    std::size_t test_size = 4000;
    int validation_t = 45;  // sim3 and sim5 default to 47
    double truncation = 2.5;
    int threads = 1;
    std::filesystem::path data_dir;  // empty: default_data_dir()
    /// Absolute candidate values for every family; empty selects the
    /// corollary grid {1, ..., 1/ceil(sqrt n)} in units of the top eigenvalue.
    std::vector<double> grid;
    int quad_degree = -1;  // -1: floor(1 / mesh norm), then descending search
    int sweep_points = 12;  // sim1 parameter sweep length
    std::filesystem::path prediction_prefix;  // sim6 dumps, skipped when empty
    bool record_timing = false;  // wall_ms stays 0 otherwise, keeping output reproducible
    bool verbose = false;
};

/// Desk-scale defaults for sim1 .. sim6.
ScenarioConfig default_config(const std::string& scenario);
std::vector<std::string> scenario_names();

/// Runs every (plan, delta) cell in a work pool of config.threads workers
/// and returns per-trial rows followed by the trial average (trial = -1),
/// ordered by configuration.
std::vector<ExperimentRecord> run_scenario(const ScenarioConfig& config);

struct RealDataConfig {
    std::filesystem::path train_csv;
    std::filesystem::path test_csv;  // empty: hold out (1 - split) of the training file
    std::string value_column = "value";
    double split = 0.8;
    double delta = 0.0;
    double truncation = -1.0;  // negative: 5 delta
    bool clamp_zero = false;
    int folds = 5;
    int trials = 5;
    std::uint64_t seed = 1;
    std::vector<FilterFamily> families{FilterFamily::tikhonov, FilterFamily::landweber, FilterFamily::cutoff};
    bool include_ki = true;
    std::vector<double> grid;
    std::filesystem::path prediction_prefix;
    bool record_timing = false;
};

/// Noisy lat/lon data: k-fold CV on the training part, metrics on the test part.
std::vector<ExperimentRecord> run_real_data(const RealDataConfig& config);

/// Appends trial = -1 rows holding the mean of each metric per
/// (scenario, sampler, n_train, delta, method, param) group.
std::vector<ExperimentRecord> with_averages(std::vector<ExperimentRecord> rows);

}  // namespace spherefit

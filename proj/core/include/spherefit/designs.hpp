#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "spherefit/geometry.hpp"

namespace spherefit {

/// Directory holding shipped data (designs/). Honors SPHEREFIT_DATA_DIR.
std::filesystem::path default_data_dir();

/// `<data_dir>/designs/ss<t>.txt`, the antipodal t-design file for strength t.
std::filesystem::path design_file(const std::filesystem::path& data_dir, int t);

/// `<data_dir>/designs/rot120_15.txt`, the 120-point 15-design used as the
/// base of rotated sampling.
std::filesystem::path rotation_base_file(const std::filesystem::path& data_dir);

/// Size of the antipodal design produced for strength t: the smallest even
/// N for which the free parameters (2 per antipodal pair, less 3 for
/// rotations) cover the even-degree moment conditions.
std::size_t symmetric_design_size(int t);

/// Point count of the shipped t-design under data_dir, or
/// symmetric_design_size(t) when the file is absent.
std::size_t shipped_design_size(const std::filesystem::path& data_dir, int t);

struct DesignSearchOptions {
    int max_iterations = 400;
    int restarts = 20;
    double tolerance = 1e-14;  // max absolute moment residual
    std::uint64_t seed = 1;
    int extra_pairs = 0;       // also try sizes N+2, ..., N+2*extra_pairs
    bool verbose = false;
};

struct DesignSearchResult {
    Matrix coords;             // 3 x N
    double residual = 0.0;     // max |mean Y_{k,l}| over 1 <= k <= t
    int iterations = 0;
    int restarts_used = 0;
};

/// Numerically solves for an antipodally symmetric spherical t-design with
/// symmetric_design_size(t) points by Levenberg-Marquardt on the even-degree
/// moment equations, with one antipodal pair pinned at the poles (0,0,+-1).
/// When that size fails, sizes up to
/// N + 2*extra_pairs are tried in turn. Returns nullopt if no attempt reaches
/// the tolerance.
std::optional<DesignSearchResult> find_symmetric_design(int t, const DesignSearchOptions& options = {});

/// Same search with an explicit (even) number of points.
std::optional<DesignSearchResult> find_symmetric_design_of_size(int t, std::size_t n,
                                                                const DesignSearchOptions& options = {});

/// Searches for a 120-point 15-design made of five orbits of the rotation
/// group of the cube (ten free angles).
std::optional<DesignSearchResult> find_rotation_base_design(const DesignSearchOptions& options = {});

/// max over 1 <= k <= t of |(1/N) sum_i Y_{k,l}(x_i)| with equal weights.
double equal_weight_residual(const Matrix& coords, int t);

}  // namespace spherefit

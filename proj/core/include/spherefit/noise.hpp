#pragma once

#include <cstdint>

#include "spherefit/linalg.hpp"

namespace spherefit {

/// N(0, std_dev^2) draws clamped to [-truncation, truncation].
struct NoiseSpec {
    double std_dev = 0.0;
    double truncation = 2.5;
    std::uint64_t seed = 0;
    std::uint64_t stream = 2;
};

Vector gen_noise(const NoiseSpec& spec, std::size_t n);

}  // namespace spherefit

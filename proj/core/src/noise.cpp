#include "spherefit/noise.hpp"

#include <algorithm>

#include "spherefit/errors.hpp"
#include "spherefit/random.hpp"

namespace spherefit {

Vector gen_noise(const NoiseSpec& spec, std::size_t n) {
    if (!(spec.std_dev >= 0.0)) throw Error("noise level must be nonnegative");
    if (!(spec.truncation >= 0.0)) throw Error("truncation bound must be nonnegative");
    Vector e = Vector::Zero(static_cast<Eigen::Index>(n));
    if (spec.std_dev == 0.0) return e;
    RandomStream rng(spec.seed, spec.stream);
    for (Eigen::Index i = 0; i < e.size(); ++i)
        e[i] = std::clamp(spec.std_dev * rng.normal(), -spec.truncation, spec.truncation);
    return e;
}

}  // namespace spherefit

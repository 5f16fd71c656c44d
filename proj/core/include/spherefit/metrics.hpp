#pragma once

#include "spherefit/linalg.hpp"

namespace spherefit {

/// Root mean square of predictions - targets.
double rmse(const Vector& predictions, const Vector& targets);

/// max |predictions - targets|.
double sup_err(const Vector& predictions, const Vector& targets);

}  // namespace spherefit

#pragma once

#include <Eigen/Core>

namespace spherefit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

}  // namespace spherefit

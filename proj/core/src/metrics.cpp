#include "spherefit/metrics.hpp"

#include <cmath>

#include "spherefit/errors.hpp"

namespace spherefit {

namespace {

void check_lengths(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw Error("prediction and target lengths differ");
    if (a.size() == 0) throw Error("metrics need at least one value");
}

}  // namespace

double rmse(const Vector& predictions, const Vector& targets) {
    check_lengths(predictions, targets);
    return std::sqrt((predictions - targets).squaredNorm() / static_cast<double>(predictions.size()));
}

double sup_err(const Vector& predictions, const Vector& targets) {
    check_lengths(predictions, targets);
    return (predictions - targets).cwiseAbs().maxCoeff();
}

}  // namespace spherefit

#include "spherefit/model_selection.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "spherefit/errors.hpp"
#include "spherefit/random.hpp"

namespace spherefit {

namespace {

void check_candidates(const std::vector<double>& values) {
    if (values.empty()) throw Error("parameter grid is empty");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw Error("grid parameters must be positive and finite");
}

std::vector<double> sorted_descending(std::vector<double> values) {
    std::sort(values.begin(), values.end(), std::greater<>());
    return values;
}

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    RandomStream rng(seed, 5);
    for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng.index(i)]);
    return idx;
}

}  // namespace

ParameterGrid ParameterGrid::corollary(FilterFamily family, std::size_t n) {
    if (n == 0) throw Error("grid needs a positive sample size");
    const auto m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    ParameterGrid grid{family, {}, true};
    for (int j = 1; j <= m; ++j) grid.candidates.push_back(1.0 / j);
    return grid;
}

ParameterGrid ParameterGrid::explicit_values(FilterFamily family, std::vector<double> values) {
    check_candidates(values);
    return ParameterGrid{family, sorted_descending(std::move(values)), false};
}

ParameterGrid ParameterGrid::geometric(FilterFamily family, double hi, double lo, int count, bool kappa_relative) {
    if (!(hi > 0.0) || !(lo > 0.0) || lo > hi || count < 1) throw Error("invalid geometric grid");
    ParameterGrid grid{family, {}, kappa_relative};
    if (count == 1) {
        grid.candidates.push_back(hi);
        return grid;
    }
    const double ratio = std::log(lo / hi) / (count - 1);
    for (int i = 0; i < count; ++i) grid.candidates.push_back(i + 1 == count ? lo : hi * std::exp(ratio * i));
    return grid;
}

std::vector<double> ParameterGrid::resolve(double kappa) const {
    check_candidates(candidates);
    std::vector<double> out;
    if (family == FilterFamily::landweber) {
        std::vector<int> steps;
        for (double v : candidates) steps.push_back(std::max(1, static_cast<int>(std::lround(1.0 / v))));
        std::sort(steps.begin(), steps.end());
        steps.erase(std::unique(steps.begin(), steps.end()), steps.end());
        for (int l : steps) out.push_back(1.0 / l);
        return out;
    }
    const double scale = kappa_relative ? kappa : 1.0;
    if (!(scale > 0.0)) throw Error("kappa must be positive to resolve a relative grid");
    for (double v : candidates) out.push_back(v * scale);
    return sorted_descending(std::move(out));
}

std::pair<LabeledData, LabeledData> split_data(const LabeledData& data, double fraction, std::uint64_t seed) {
    if (!(fraction > 0.0 && fraction < 1.0)) throw Error("split fraction must lie in (0, 1)");
    const std::size_t n = data.size();
    const auto n_train = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n)));
    if (n_train == 0 || n_train >= n) throw Error("split leaves an empty training or validation set");
    auto idx = shuffled_indices(n, seed);
    std::vector<std::size_t> train(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::vector<std::size_t> val(idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
    std::sort(train.begin(), train.end());
    std::sort(val.begin(), val.end());
    return {data.select(train), data.select(val)};
}

std::vector<std::optional<Vector>> candidate_coefficients(const WsfSystem& system, const Vector& y,
                                                          FilterFamily family, const std::vector<double>& params) {
    std::vector<std::optional<Vector>> out(params.size());
    if (family == FilterFamily::landweber) {
        std::vector<int> steps;
        for (double p : params) steps.push_back(FilterSpec::landweber(p).steps());
        try {
            auto path = system.landweber_coefficients(steps, y);
            for (std::size_t i = 0; i < params.size(); ++i)
                if (path[i].allFinite()) out[i] = std::move(path[i]);
        } catch (const Error&) {
        }
        return out;
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
        try {
            Vector a = system.coefficients(FilterSpec::make(family, params[i]), y);
            if (a.allFinite()) out[i] = std::move(a);
        } catch (const Error&) {
        }
    }
    return out;
}

std::size_t argmin_score(const std::vector<double>& scores) {
    std::size_t best = scores.size();
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (std::isnan(scores[i])) continue;
        if (best == scores.size() || scores[i] < scores[best]) best = i;
    }
    if (best == scores.size()) throw Error("every candidate parameter failed");
    return best;
}

CvResult select_parameter_precomputed(const WsfSystem& train_system, const Vector& train_y, const Matrix& k_val,
                                      const Vector& val_y, const Vector& val_weights, const ParameterGrid& grid,
                                      std::vector<std::optional<Vector>>* coefficients) {
    if (k_val.rows() != val_y.size() || val_y.size() != val_weights.size())
        throw Error("validation points, values and weights differ in length");
    if (k_val.cols() != static_cast<Eigen::Index>(train_system.size()))
        throw Error("validation kernel block does not match the training set");
    CvResult result;
    const double kappa = grid.kappa_relative ? train_system.kappa() : 1.0;
    result.candidates = grid.resolve(kappa);
    result.train_size = train_system.size();
    result.val_size = static_cast<std::size_t>(val_y.size());
    auto coeffs = candidate_coefficients(train_system, train_y, grid.family, result.candidates);
    result.weighted_scores.assign(coeffs.size(), std::nan(""));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!coeffs[i]) continue;
        const Vector pred = k_val * *coeffs[i];
        result.weighted_scores[i] = val_weights.dot((pred - val_y).cwiseAbs2());
    }
    result.chosen_index = argmin_score(result.weighted_scores);
    result.chosen_lambda = result.candidates[result.chosen_index];
    if (coefficients) *coefficients = std::move(coeffs);
    return result;
}

CvResult select_parameter(const WsfSystem& train_system, const Vector& train_y, const Matrix& val_points,
                          const Vector& val_y, const Vector& val_weights, const ParameterGrid& grid) {
    if (val_points.rows() != 3) throw Error("validation points must be 3 x m");
    const Matrix k_val = cross_kernel_matrix(train_system.kernel(), PointSet(val_points), train_system.rule().points);
    return select_parameter_precomputed(train_system, train_y, k_val, val_y, val_weights, grid);
}

CvResult select_parameter(const LabeledData& train, const LabeledData& val, const QuadratureRule& val_rule,
                          const KernelSpec& kernel, const ParameterGrid& grid) {
    if (val_rule.points.coords() != val.points.coords()) throw Error("validation rule points differ from the data");
    WsfSystem system(kernel, auto_rule(train.points, default_degree_hint(train.points)));
    return select_parameter(system, train.values, val.points.coords(), val.values, val_rule.weights, grid);
}

CvResult kfold_select(const LabeledData& data, const KernelSpec& kernel, const ParameterGrid& grid, int folds,
                      std::uint64_t seed) {
    if (folds < 2) throw Error("k-fold needs at least two folds");
    const std::size_t n = data.size();
    if (n < static_cast<std::size_t>(folds)) throw Error("fewer points than folds");
    const auto idx = shuffled_indices(n, seed);

    CvResult result;
    std::vector<double> total;
    std::vector<std::size_t> counts;
    double kappa_sum = 0.0;
    for (int f = 0; f < folds; ++f) {
        std::vector<std::size_t> train, held;
        for (std::size_t i = 0; i < n; ++i) (i % static_cast<std::size_t>(folds) == static_cast<std::size_t>(f) ? held : train).push_back(idx[i]);
        std::sort(train.begin(), train.end());
        std::sort(held.begin(), held.end());
        const auto tr = data.select(train);
        const auto va = data.select(held);
        WsfSystem system(kernel, auto_rule(tr.points, default_degree_hint(tr.points)));
        const double kappa = grid.kappa_relative ? system.kappa() : 1.0;
        kappa_sum += kappa;
        const auto params = grid.resolve(kappa);
        if (total.empty()) {
            total.assign(params.size(), 0.0);
            counts.assign(params.size(), 0);
        }
        const auto coeffs = candidate_coefficients(system, tr.values, grid.family, params);
        for (std::size_t i = 0; i < coeffs.size() && i < total.size(); ++i) {
            if (!coeffs[i]) continue;
            const Vector pred = evaluate(kernel, tr.points.coords(), *coeffs[i], va.points.coords());
            total[i] += (pred - va.values).squaredNorm();
            ++counts[i];
        }
        result.train_size += tr.size();
        result.val_size += va.size();
    }
    result.candidates = grid.resolve(kappa_sum / folds);
    result.weighted_scores.assign(total.size(), std::nan(""));
    for (std::size_t i = 0; i < total.size(); ++i)
        if (counts[i] == static_cast<std::size_t>(folds)) result.weighted_scores[i] = total[i] / static_cast<double>(n);
    result.chosen_index = argmin_score(result.weighted_scores);
    result.chosen_lambda = result.candidates[result.chosen_index];
    result.train_size /= static_cast<std::size_t>(folds);
    result.val_size /= static_cast<std::size_t>(folds);
    return result;
}

}  // namespace spherefit

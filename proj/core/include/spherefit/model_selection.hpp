#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "spherefit/estimator.hpp"

namespace spherefit {

/// Candidate filter parameters, sorted descending. With `kappa_relative` the
/// tikhonov and cutoff candidates are multiples of the top eigenvalue of the
/// training system; landweber candidates are always 1/l.
struct ParameterGrid {
    FilterFamily family = FilterFamily::tikhonov;
    std::vector<double> candidates;
    bool kappa_relative = false;

    /// {1, 1/2, ..., 1/ceil(sqrt(n))}, relative to kappa.
    static ParameterGrid corollary(FilterFamily family, std::size_t n);
    /// Absolute values as given.
    static ParameterGrid explicit_values(FilterFamily family, std::vector<double> values);
    /// `count` log-spaced values from hi down to lo.
    static ParameterGrid geometric(FilterFamily family, double hi, double lo, int count, bool kappa_relative);

    /// Absolute filter parameters for a system whose top eigenvalue is kappa.
    /// Landweber values are rounded to 1/l and duplicates dropped.
    std::vector<double> resolve(double kappa) const;
};

struct CvResult {
    double chosen_lambda = 0.0;
    std::size_t chosen_index = 0;
    std::vector<double> candidates;       // resolved, descending
    std::vector<double> weighted_scores;  // NaN for skipped candidates
    std::size_t train_size = 0;
    std::size_t val_size = 0;
};

/// Deterministic shuffle split; the training part holds round(fraction n).
std::pair<LabeledData, LabeledData> split_data(const LabeledData& data, double fraction, std::uint64_t seed);

/// Coefficients for every resolved candidate; nullopt where the fit failed.
std::vector<std::optional<Vector>> candidate_coefficients(const WsfSystem& system, const Vector& y,
                                                          FilterFamily family, const std::vector<double>& params);

/// argmin over candidates of sum_i w_i (f(x_i) - y_i)^2 on the validation
/// set, ties resolved to the largest parameter. Throws if every candidate
/// failed.
CvResult select_parameter(const WsfSystem& train_system, const Vector& train_y, const Matrix& val_points,
                          const Vector& val_y, const Vector& val_weights, const ParameterGrid& grid);

/// Same selection with the validation-by-training kernel block already built.
/// When `coefficients` is given it receives every candidate fit.
CvResult select_parameter_precomputed(const WsfSystem& train_system, const Vector& train_y, const Matrix& k_val,
                                      const Vector& val_y, const Vector& val_weights, const ParameterGrid& grid,
                                      std::vector<std::optional<Vector>>* coefficients = nullptr);

/// Builds the training rule with auto_rule (degree hint floor(1/h)) and runs
/// the weighted selection.
CvResult select_parameter(const LabeledData& train, const LabeledData& val, const QuadratureRule& val_rule,
                          const KernelSpec& kernel, const ParameterGrid& grid);

/// Index of the minimum score, ties to the smaller index (larger parameter).
std::size_t argmin_score(const std::vector<double>& scores);

/// Plain k-fold CV with mean squared error scoring. Each fold trains with
/// its own automatic quadrature rule.
CvResult kfold_select(const LabeledData& data, const KernelSpec& kernel, const ParameterGrid& grid, int folds,
                      std::uint64_t seed);

}  // namespace spherefit

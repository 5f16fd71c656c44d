#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include "spherefit/geometry.hpp"

namespace spherefit {

/// One results row. NaN fields are written as empty cells.
struct ExperimentRecord {
    std::string scenario;
    std::string sampler;
    std::size_t n_train = 0;
    double delta = 0.0;
    std::string method;
    double param = std::numeric_limits<double>::quiet_NaN();
    int trial = 0;  // -1 marks the average over trials
    double rmse = std::numeric_limits<double>::quiet_NaN();
    double sup_err = std::numeric_limits<double>::quiet_NaN();
    double cnkm = std::numeric_limits<double>::quiet_NaN();
    double stability_err = std::numeric_limits<double>::quiet_NaN();
    double fitting_err = std::numeric_limits<double>::quiet_NaN();
    std::int64_t wall_ms = 0;
};

inline constexpr const char* kRecordsHeader =
    "scenario,sampler,n_train,delta,method,param,trial,rmse,sup_err,cnkm,stability_err,fitting_err,wall_ms";

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records);
void write_records(const std::filesystem::path& path, const std::vector<ExperimentRecord>& records);
std::vector<ExperimentRecord> read_records(const std::filesystem::path& path);

/// `x,y,z,truth,prediction` rows.
void write_predictions(const std::filesystem::path& path, const Matrix& points, const Vector& truth,
                       const Vector& prediction);

}  // namespace spherefit

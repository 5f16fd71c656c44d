#include "spherefit/records.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spherefit/errors.hpp"
#include "spherefit/point_io.hpp"

namespace spherefit {

namespace {

std::string cell(double v) { return std::isnan(v) ? std::string() : format_real(v); }

double parse_cell(const std::string& s, std::size_t line) {
    if (s.empty()) return std::nan("");
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError("not a number: '" + s + "'", line);
    return v;
}

std::vector<std::string> split_commas(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

void write_records(std::ostream& out, const std::vector<ExperimentRecord>& records) {
    out << kRecordsHeader << '\n';
    for (const auto& r : records) {
        out << r.scenario << ',' << r.sampler << ',' << r.n_train << ',' << cell(r.delta) << ',' << r.method << ','
            << cell(r.param) << ',' << r.trial << ',' << cell(r.rmse) << ',' << cell(r.sup_err) << ','
            << cell(r.cnkm) << ',' << cell(r.stability_err) << ',' << cell(r.fitting_err) << ',' << r.wall_ms
            << '\n';
    }
}

void write_records(const std::filesystem::path& path, const std::vector<ExperimentRecord>& records) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    write_records(out, records);
    if (!out) throw Error("failed writing " + path.string());
}

std::vector<ExperimentRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    std::string line;
    if (!std::getline(in, line) || line != kRecordsHeader) throw ParseError("unexpected results header", 1);
    std::vector<ExperimentRecord> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto f = split_commas(line);
        if (f.size() != 13) throw ParseError("expected 13 fields, found " + std::to_string(f.size()), line_no);
        ExperimentRecord r;
        r.scenario = f[0];
        r.sampler = f[1];
        r.n_train = static_cast<std::size_t>(parse_cell(f[2], line_no));
        r.delta = parse_cell(f[3], line_no);
        r.method = f[4];
        r.param = parse_cell(f[5], line_no);
        r.trial = static_cast<int>(parse_cell(f[6], line_no));
        r.rmse = parse_cell(f[7], line_no);
        r.sup_err = parse_cell(f[8], line_no);
        r.cnkm = parse_cell(f[9], line_no);
        r.stability_err = parse_cell(f[10], line_no);
        r.fitting_err = parse_cell(f[11], line_no);
        r.wall_ms = static_cast<std::int64_t>(parse_cell(f[12], line_no));
        out.push_back(std::move(r));
    }
    return out;
}

void write_predictions(const std::filesystem::path& path, const Matrix& points, const Vector& truth,
                       const Vector& prediction) {
    if (points.cols() != truth.size() || truth.size() != prediction.size())
        throw Error("prediction dump columns differ in length");
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "x,y,z,truth,prediction\n";
    for (Eigen::Index j = 0; j < points.cols(); ++j) {
        out << format_real(points(0, j)) << ',' << format_real(points(1, j)) << ',' << format_real(points(2, j))
            << ',' << cell(truth[j]) << ',' << format_real(prediction[j]) << '\n';
    }
    if (!out) throw Error("failed writing " + path.string());
}

}  // namespace spherefit

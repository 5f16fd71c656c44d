#include "spherefit/real_data.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "spherefit/errors.hpp"

namespace spherefit {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(trim(field));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

double number(const std::string& cell, const std::string& column, std::size_t line) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
        throw ParseError("column " + column + ": not a number: '" + cell + "'", line);
    return v;
}

}  // namespace

Vector latlon_to_unit(double lat_deg, double lon_deg) {
    if (lat_deg == 90.0) return Vector{{0.0, 0.0, 1.0}};
    if (lat_deg == -90.0) return Vector{{0.0, 0.0, -1.0}};
    const double phi = lat_deg * std::numbers::pi / 180.0;
    const double theta = lon_deg * std::numbers::pi / 180.0;
    return Vector{{std::cos(phi) * std::cos(theta), std::cos(phi) * std::sin(theta), std::sin(phi)}};
}

LabeledData parse_latlon_csv(const std::string& text, const std::string& value_column) {
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) {
            header = split_row(line);
            break;
        }
    }
    if (header.empty()) throw ParseError("missing header row", 0);
    auto column = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) throw ParseError("missing column '" + name + "'", line_no);
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t lat_col = column("lat_deg");
    const std::size_t lon_col = column("lon_deg");
    const std::size_t val_col = column(value_column);

    std::vector<Vector> points;
    std::vector<double> values;
    std::map<std::array<double, 3>, std::size_t> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_row(line);
        if (cells.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " cells, found " +
                                 std::to_string(cells.size()),
                             line_no);
        const double lat = number(cells[lat_col], "lat_deg", line_no);
        const double lon = number(cells[lon_col], "lon_deg", line_no);
        if (lat < -90.0 || lat > 90.0) throw ParseError("latitude out of range", line_no);
        Vector x = latlon_to_unit(lat, lon);
        const std::array<double, 3> key{x[0], x[1], x[2]};
        if (auto [it, fresh] = seen.emplace(key, line_no); !fresh)
            throw ParseError("duplicate point (also on line " + std::to_string(it->second) + ")", line_no);
        points.push_back(std::move(x));
        values.push_back(number(cells[val_col], value_column, line_no));
    }
    if (points.empty()) throw ParseError("no data rows", 0);
    Matrix coords(3, static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) coords.col(static_cast<Eigen::Index>(i)) = points[i];
    return LabeledData(PointSet(std::move(coords)), Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size())));
}

LabeledData ingest_latlon_csv(const std::filesystem::path& path, const std::string& value_column) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_latlon_csv(buffer.str(), value_column);
}

}  // namespace spherefit

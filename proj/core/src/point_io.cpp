#include "spherefit/point_io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "spherefit/errors.hpp"

namespace spherefit {

namespace {

bool parse_double(std::string_view token, double& out) {
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

PointTable parse_point_table(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::array<double, 4>> rows;
    std::vector<std::string> comments;
    std::vector<std::size_t> lines;
    int columns = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = line;
        if (auto hash = body.find('#'); hash != std::string::npos) {
            if (rows.empty()) {
                auto start = body.find_first_not_of(" \t", hash + 1);
                comments.push_back(start == std::string::npos ? std::string() : body.substr(start));
            }
            body.resize(hash);
        }
        std::istringstream fields(body);
        std::array<double, 4> row{};
        int count = 0;
        std::string token;
        while (fields >> token) {
            if (count == 4) throw ParseError("expected 3 or 4 columns, found more", line_no);
            if (!parse_double(token, row[count]))
                throw ParseError("not a number: '" + token + "'", line_no);
            ++count;
        }
        if (count == 0) continue;
        if (count < 3) throw ParseError("expected 3 or 4 columns, found " + std::to_string(count), line_no);
        if (columns == 0) columns = count;
        if (count != columns)
            throw ParseError("inconsistent column count (" + std::to_string(count) + " vs " +
                                 std::to_string(columns) + ")",
                             line_no);
        rows.push_back(row);
        lines.push_back(line_no);
    }
    if (rows.empty()) throw ParseError("no points found", 0);

    PointTable table;
    table.header_comments = std::move(comments);
    table.line_numbers = std::move(lines);
    table.coords.resize(3, static_cast<Eigen::Index>(rows.size()));
    if (columns == 4) table.values = Vector(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto col = static_cast<Eigen::Index>(i);
        for (int r = 0; r < 3; ++r) table.coords(r, col) = rows[i][r];
        if (table.values) (*table.values)[col] = rows[i][3];
    }
    return table;
}

PointTable read_point_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open point file " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_point_table(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what(), e.line());
    }
}

PointSet read_points(const std::filesystem::path& path) {
    return PointSet(read_point_table(path).coords);
}

std::string format_real(double value) {
    std::array<char, 64> buf{};
    auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc()) return "nan";
    return std::string(buf.data(), ptr);
}

void write_points(const std::filesystem::path& path, const PointSet& points,
                  const std::vector<std::string>& header_comments) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    for (const auto& c : header_comments) out << "# " << c << '\n';
    const Matrix& x = points.coords();
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
        for (Eigen::Index r = 0; r < x.rows(); ++r) {
            if (r) out << ' ';
            out << format_real(x(r, j));
        }
        out << '\n';
    }
}

}  // namespace spherefit

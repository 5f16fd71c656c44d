#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "spherefit/geometry.hpp"

namespace spherefit {

/// Contents of a whitespace separated point file. Each non-comment line is
/// `x y z` or `x y z value`; `#` starts a comment. Either every row carries a
/// value or none does.
struct PointTable {
    Matrix coords;                 // 3 x n, as read (not normalized)
    std::optional<Vector> values;  // present when rows have a fourth column
    std::vector<std::string> header_comments;
    std::vector<std::size_t> line_numbers;  // source line of each column
};

PointTable read_point_table(const std::filesystem::path& path);
PointTable parse_point_table(const std::string& text);

/// Reads a point file into a PointSet (values ignored).
PointSet read_points(const std::filesystem::path& path);

void write_points(const std::filesystem::path& path, const PointSet& points,
                  const std::vector<std::string>& header_comments = {});

/// Shortest round-trip decimal representation.
std::string format_real(double value);

}  // namespace spherefit

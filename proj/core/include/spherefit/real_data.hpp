#pragma once

#include <filesystem>
#include <string>

#include "spherefit/estimator.hpp"

namespace spherefit {

/// (cos(lat) cos(lon), cos(lat) sin(lon), sin(lat)) from degrees. The poles
/// map exactly to (0, 0, +-1).
Vector latlon_to_unit(double lat_deg, double lon_deg);

/// Comma separated file with a header row naming lat_deg, lon_deg and the
/// value column. Throws ParseError on missing columns, bad cells, out of range
/// coordinates or duplicate points.
LabeledData ingest_latlon_csv(const std::filesystem::path& path, const std::string& value_column = "value");
LabeledData parse_latlon_csv(const std::string& text, const std::string& value_column = "value");

}  // namespace spherefit

#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pairwave/scan_table.hpp"

namespace pairwave {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shortest locale-independent text with 17 significant digits.
std::string format_double(double v);
double parse_double(std::string_view text);

/// Header row: axis names then column labels; one row per grid point.
std::string scan_table_to_csv(const ScanTable& table);

/// Rebuilds a table from CSV whose first axis_count columns are grid
/// coordinates. Axes are recovered from the distinct coordinate values.
ScanTable scan_table_from_csv(std::string_view csv, std::size_t axis_count);

nlohmann::json axis_to_json(const Axis& a);
nlohmann::json scan_table_to_json(const ScanTable& table);

/// Generic table with a header and numeric rows (e.g. nodal planes).
std::string rows_to_csv(const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& rows);

/// Writes to a temporary sibling then renames over the target.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace pairwave

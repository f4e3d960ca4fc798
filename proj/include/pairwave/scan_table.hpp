#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pairwave {

/// Uniform grid axis: `points` samples from min to max inclusive.
struct Axis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  std::size_t points = 0;
  std::string units = "length";

  void validate() const;
  double coordinate(std::size_t i) const;
  double step() const;
  std::vector<double> coordinates() const;
};

/// Rectangular grid of evaluated quantities. Rows enumerate the grid in
/// row-major order (last axis fastest); each row holds one value per column.
class ScanTable {
 public:
  ScanTable() = default;
  ScanTable(std::vector<Axis> axes, std::vector<std::string> columns, std::vector<double> values);

  const std::vector<Axis>& axes() const { return axes_; }
  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<double>& values() const { return values_; }

  std::size_t rows() const;
  double at(std::size_t row, std::size_t column) const { return values_[row * columns_.size() + column]; }
  std::span<const double> row(std::size_t r) const;
  /// Grid coordinates of a row, one per axis.
  std::vector<double> row_coordinates(std::size_t row) const;
  std::size_t column_index(const std::string& label) const;
  std::vector<double> column(const std::string& label) const;

 private:
  std::vector<Axis> axes_;
  std::vector<std::string> columns_;
  std::vector<double> values_;
};

}  // namespace pairwave

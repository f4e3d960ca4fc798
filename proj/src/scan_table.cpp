#include "pairwave/scan_table.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pairwave {

void Axis::validate() const {
  if (name.empty()) throw std::invalid_argument("axis name must not be empty");
  if (!std::isfinite(min) || !std::isfinite(max))
    throw std::invalid_argument("axis '" + name + "' bounds must be finite");
  if (points == 0) throw std::invalid_argument("axis '" + name + "' has no points");
  if (points == 1 && min != max)
    throw std::invalid_argument("single-point axis '" + name + "' needs min == max");
  if (points > 1 && !(min < max))
    throw std::invalid_argument("axis '" + name + "' must be strictly increasing");
}

double Axis::step() const { return points > 1 ? (max - min) / static_cast<double>(points - 1) : 0.0; }

double Axis::coordinate(std::size_t i) const {
  if (i + 1 == points) return max;
  return min + static_cast<double>(i) * step();
}

std::vector<double> Axis::coordinates() const {
  std::vector<double> out(points);
  for (std::size_t i = 0; i < points; ++i) out[i] = coordinate(i);
  return out;
}

ScanTable::ScanTable(std::vector<Axis> axes, std::vector<std::string> columns,
                     std::vector<double> values)
    : axes_(std::move(axes)), columns_(std::move(columns)), values_(std::move(values)) {
  if (axes_.empty()) throw std::invalid_argument("scan table needs at least one axis");
  if (columns_.empty()) throw std::invalid_argument("scan table needs at least one column");
  for (const auto& a : axes_) a.validate();
  if (values_.size() != rows() * columns_.size())
    throw std::invalid_argument("scan table value count does not match grid shape");
}

std::size_t ScanTable::rows() const {
  if (axes_.empty()) return 0;
  std::size_t n = 1;
  for (const auto& a : axes_) n *= a.points;
  return n;
}

std::span<const double> ScanTable::row(std::size_t r) const {
  return std::span<const double>(values_).subspan(r * columns_.size(), columns_.size());
}

std::vector<double> ScanTable::row_coordinates(std::size_t row) const {
  std::vector<double> coords(axes_.size());
  for (std::size_t k = axes_.size(); k-- > 0;) {
    coords[k] = axes_[k].coordinate(row % axes_[k].points);
    row /= axes_[k].points;
  }
  return coords;
}

std::size_t ScanTable::column_index(const std::string& label) const {
  auto it = std::find(columns_.begin(), columns_.end(), label);
  if (it == columns_.end()) throw std::out_of_range("no column '" + label + "'");
  return static_cast<std::size_t>(it - columns_.begin());
}

std::vector<double> ScanTable::column(const std::string& label) const {
  const std::size_t c = column_index(label);
  std::vector<double> out(rows());
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = at(r, c);
  return out;
}

}  // namespace pairwave

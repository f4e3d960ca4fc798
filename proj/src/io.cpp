#include "pairwave/io.hpp"

#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace pairwave {

std::string format_double(double v) {
  char buf[64];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  if (ec != std::errc()) throw IoError("cannot format number");
  return std::string(buf, end);
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r'))
    text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw IoError("malformed number '" + std::string(text) + "'");
  return v;
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  for (auto line : split(text, '\n')) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

std::string scan_table_to_csv(const ScanTable& table) {
  std::ostringstream out;
  bool first = true;
  for (const auto& a : table.axes()) {
    out << (first ? "" : ",") << a.name;
    first = false;
  }
  for (const auto& c : table.columns()) out << ',' << c;
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    const auto coords = table.row_coordinates(r);
    for (std::size_t k = 0; k < coords.size(); ++k) out << (k ? "," : "") << format_double(coords[k]);
    for (double v : table.row(r)) out << ',' << format_double(v);
    out << '\n';
  }
  return out.str();
}

ScanTable scan_table_from_csv(std::string_view csv, std::size_t axis_count) {
  const auto lines = lines_of(csv);
  if (lines.empty()) throw IoError("CSV is empty");
  const auto header = split(lines.front(), ',');
  if (axis_count == 0 || header.size() <= axis_count) throw IoError("CSV header has too few columns");

  const std::size_t width = header.size();
  std::vector<std::vector<double>> coords(axis_count);
  std::vector<double> values;
  values.reserve((lines.size() - 1) * (width - axis_count));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto cells = split(lines[i], ',');
    if (cells.size() != width) throw IoError("CSV row " + std::to_string(i) + " has wrong width");
    for (std::size_t k = 0; k < axis_count; ++k) coords[k].push_back(parse_double(cells[k]));
    for (std::size_t c = axis_count; c < width; ++c) values.push_back(parse_double(cells[c]));
  }

  std::vector<Axis> axes;
  for (std::size_t k = 0; k < axis_count; ++k) {
    auto distinct = coords[k];
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.empty()) throw IoError("CSV has no data rows");
    axes.push_back(Axis{std::string(header[k]), distinct.front(), distinct.back(), distinct.size(), "length"});
  }
  std::vector<std::string> columns;
  for (std::size_t c = axis_count; c < width; ++c) columns.emplace_back(header[c]);
  try {
    return ScanTable(std::move(axes), std::move(columns), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("CSV does not describe a rectangular grid: ") + e.what());
  }
}

nlohmann::json axis_to_json(const Axis& a) {
  return {{"name", a.name}, {"min", a.min}, {"max", a.max}, {"points", a.points}, {"units", a.units}};
}

nlohmann::json scan_table_to_json(const ScanTable& table) {
  nlohmann::json axes = nlohmann::json::array();
  for (const auto& a : table.axes()) axes.push_back(axis_to_json(a));
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < table.rows(); ++r) {
    nlohmann::json row = table.row_coordinates(r);
    for (double v : table.row(r)) row.push_back(v);
    rows.push_back(std::move(row));
  }
  nlohmann::json header = nlohmann::json::array();
  for (const auto& a : table.axes()) header.push_back(a.name);
  for (const auto& c : table.columns()) header.push_back(c);
  return {{"axes", axes}, {"header", header}, {"rows", rows}};
}

std::string rows_to_csv(const std::vector<std::string>& header,
                        const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw IoError("failed writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace pairwave

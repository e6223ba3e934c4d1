#include "qqstab/cli/report_io.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "qqstab/errors.hpp"

namespace qqstab::cli {

Json num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

Json num(const Real& v) { return num(to_double(v)); }

Json to_json(const XPoint& x) {
  Json a = Json::array();
  for (const auto& c : x.coords()) a.push_back(num(c));
  return a;
}

Json to_json(const YVector& v) {
  Json a = Json::array();
  for (const auto& c : v.coords()) a.push_back(num(c));
  return a;
}

std::string fmt17(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

std::string CsvTable::render() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::vector<std::string> coord_columns(const std::string& prefix, std::size_t n) {
  if (n == 1) return {prefix};
  std::vector<std::string> cols;
  for (std::size_t i = 0; i < n; ++i) cols.push_back(prefix + "_" + std::to_string(i));
  return cols;
}

void append_coords(std::vector<std::string>& row, const std::vector<Real>& coords) {
  for (const auto& c : coords) row.push_back(fmt17(to_double(c)));
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

}  // namespace qqstab::cli

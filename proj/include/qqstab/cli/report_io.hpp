#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "qqstab/numeric.hpp"

namespace qqstab::cli {

using Json = nlohmann::ordered_json;

/// A finite double as a JSON number (shortest round-trip form); inf and nan
/// as the strings "inf", "-inf", "nan".
Json num(double v);
Json num(const Real& v);
Json to_json(const XPoint& x);
Json to_json(const YVector& v);

/// "{:.17g}", with inf/-inf/nan spelled out.
std::string fmt17(double v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  bool empty() const { return rows.empty(); }
  std::string render() const;
};

/// Column names prefix_0 .. prefix_{n-1}, or just prefix when n == 1.
std::vector<std::string> coord_columns(const std::string& prefix, std::size_t n);
void append_coords(std::vector<std::string>& row, const std::vector<Real>& coords);

void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace qqstab::cli

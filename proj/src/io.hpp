#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "sweep.hpp"

namespace magcav {

/// `axis1,axis2,stable,N1,...,low_exc_ratio`
std::string csv_header();

/// One row per grid point, 17 significant digits, masked values as `nan`.
void write_csv(const GridResult& grid, std::ostream& out);

struct CsvTable {
  std::vector<std::array<double, kCsvColumnCount>> rows;
};

/// Reads back what write_csv emits. Throws Error(kIo) on a header mismatch or
/// a malformed row.
CsvTable read_csv(std::istream& in);

nlohmann::json spec_json(const GridSpec& spec);
nlohmann::json params_json(const SystemParams& p);
nlohmann::json point_json(const PointResult& r);
/// Spec echo, point counts and the max/argmax table.
nlohmann::json grid_summary_json(const GridResult& grid);

/// Aligned human-readable report of a single point.
std::string point_report(const PointResult& r);

/// Writes `text` to `path`; throws Error(kIo) if the file cannot be written.
void write_text_file(const std::string& path, const std::string& text);

}  // namespace magcav

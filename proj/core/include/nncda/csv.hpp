#pragma once

#include <string>
#include <vector>

namespace nncda {

/// Formats a double with 17 significant digits (round-trip exact).
std::string csv_double(double v);

/// Minimal CSV table: one header row, homogeneous text cells.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const;
  std::vector<double> numeric_column(const std::string& name) const;
};

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

}  // namespace nncda

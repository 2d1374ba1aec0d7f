#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace whitham {

// Shortest decimal form that round-trips a double bit-for-bit.
std::string fmt17(double x);

// Strict full-consumption double parse; throws runtime_error on garbage.
double parse_number(const std::string& s);

// Comma-separated table with a leading version comment line. Cells never
// contain commas; event lists inside a cell use ';' separators.
struct CsvTable {
  std::string version;                         // "# ..." comment line
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // each row matches columns

  int column(const std::string& name) const;   // -1 when absent
};

void write_csv(std::ostream& os, const CsvTable& table);
CsvTable read_csv(std::istream& is);
CsvTable read_csv_file(const std::string& path);

inline constexpr const char* kFlowCsvVersion = "# whitham flow csv v1";
inline constexpr const char* kGeometryCsvVersion = "# whitham geometry csv v1";
inline constexpr const char* kEventsCsvVersion = "# whitham events csv v1";
inline constexpr const char* kPlotCsvVersion = "# whitham plotdata csv v1";

std::vector<std::string> flow_csv_columns();
std::vector<std::string> geometry_csv_columns();
std::vector<std::string> events_csv_columns();

}  // namespace whitham

#include "whitham/csv_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace whitham {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_number(const std::string& s) {
  const char* c = s.c_str();
  char* end = nullptr;
  double x = std::strtod(c, &end);
  if (end == c || *end != '\0')
    throw std::runtime_error("malformed number '" + s + "'");
  return x;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return static_cast<int>(i);
  return -1;
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

std::string join(const std::vector<std::string>& cells) {
  std::string out;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out;
}

}  // namespace

void write_csv(std::ostream& os, const CsvTable& table) {
  if (!table.version.empty()) os << table.version << '\n';
  os << join(table.columns) << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size())
      throw std::runtime_error("csv write: ragged row");
    os << join(row) << '\n';
  }
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  bool have_header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (!have_header && t.version.empty()) t.version = line;
      continue;
    }
    if (!have_header) {
      t.columns = split_line(line);
      have_header = true;
      continue;
    }
    auto row = split_line(line);
    if (row.size() != t.columns.size())
      throw std::runtime_error("csv read: row with " + std::to_string(row.size()) +
                               " cells, expected " + std::to_string(t.columns.size()));
    t.rows.push_back(std::move(row));
  }
  if (!have_header) throw std::runtime_error("csv read: missing header");
  return t;
}

CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv read: cannot open '" + path + "'");
  return read_csv(in);
}

std::vector<std::string> flow_csv_columns() {
  return {"t",      "u",      "alpha", "gamma", "H",
          "ci_inf", "ce_inf", "ca_inf", "dt",    "events"};
}

std::vector<std::string> geometry_csv_columns() {
  return {"t",    "theta",      "gamma",      "alpha",        "H",
          "area", "willmore",   "refinement", "sphere_defect", "failed_points"};
}

std::vector<std::string> events_csv_columns() { return {"kind", "theta", "value"}; }

}  // namespace whitham

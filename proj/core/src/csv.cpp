#include "bayesel/csv.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "bayesel/errors.hpp"

namespace bayesel {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
  const std::string t = trim(cell);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open CSV file: " + path);

  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_line(line));
  }
  if (rows.empty()) throw ConfigError("empty CSV file: " + path);

  const std::size_t ncol = rows[0].size();
  for (const auto& r : rows)
    if (r.size() != ncol) throw ConfigError("ragged CSV row in " + path);

  CsvTable table;
  double v = 0.0;
  std::size_t first_data = 0;
  for (const auto& cell : rows[0]) {
    if (!parse_double(cell, v)) {
      table.had_header = true;
      break;
    }
  }
  if (table.had_header) {
    for (const auto& cell : rows[0]) table.column_names.push_back(trim(cell));
    first_data = 1;
    if (rows.size() == 1) throw ConfigError("CSV has a header but no rows: " + path);
  }

  const std::size_t nrow = rows.size() - first_data;
  table.values.resize(static_cast<Eigen::Index>(nrow), static_cast<Eigen::Index>(ncol));
  for (std::size_t i = 0; i < nrow; ++i) {
    for (std::size_t j = 0; j < ncol; ++j) {
      if (!parse_double(rows[i + first_data][j], v))
        throw ConfigError("non-numeric CSV cell in " + path);
      table.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
    }
  }
  return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Matrix& values) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write CSV file: " + path);
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (j) out << ',';
    out << header[j];
  }
  if (!header.empty()) out << '\n';
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      if (j) out << ',';
      out << format_double(values(i, j));
    }
    out << '\n';
  }
}

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace bayesel

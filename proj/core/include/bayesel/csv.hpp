#ifndef BAYESEL_CSV_HPP
#define BAYESEL_CSV_HPP

#include <string>
#include <vector>

#include "bayesel/types.hpp"

namespace bayesel {

struct CsvTable {
  std::vector<std::string> column_names;  // empty when the file had no header
  Matrix values;                          // one row per observation
  bool had_header = false;
};

// Comma-separated, '.' decimal point. A first row with any non-numeric cell is
// taken as a header. Ragged rows and empty files raise ConfigError.
CsvTable read_csv(const std::string& path);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const Matrix& values);

// Shortest round-trip formatting used by every writer, so reruns are
// byte-identical.
std::string format_double(double v);

}  // namespace bayesel

#endif

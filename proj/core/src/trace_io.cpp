#include "bayesel/trace_io.hpp"

#include <fstream>

#include "bayesel/csv.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

void write_trace_csv(const std::string& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write trace file: " + path);
  out << "iter,accepted,log_post";
  for (const auto& n : trace.names) out << ',' << n;
  out << '\n';
  for (Eigen::Index t = 0; t < trace.states.rows(); ++t) {
    out << (t + 1) << ',' << static_cast<int>(trace.accepted[t]) << ','
        << format_double(trace.log_posts[t]);
    for (Eigen::Index j = 0; j < trace.states.cols(); ++j)
      out << ',' << format_double(trace.states(t, j));
    out << '\n';
  }
}

Trace read_trace_csv(const std::string& path) {
  const CsvTable table = read_csv(path);
  if (!table.had_header || table.column_names.size() < 3 ||
      table.column_names[0] != "iter" || table.column_names[1] != "accepted" ||
      table.column_names[2] != "log_post")
    throw ConfigError("not a trace file (expected iter,accepted,log_post,...): " + path);

  Trace trace;
  const Eigen::Index n = table.values.rows();
  const Eigen::Index k = table.values.cols() - 3;
  trace.names.assign(table.column_names.begin() + 3, table.column_names.end());
  trace.states = table.values.rightCols(k);
  trace.log_posts = table.values.col(2);
  trace.accepted.resize(n);
  for (Eigen::Index t = 0; t < n; ++t)
    trace.accepted[t] = static_cast<std::uint8_t>(table.values(t, 1));
  return trace;
}

}  // namespace bayesel

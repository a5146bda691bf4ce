#ifndef BAYESEL_DIAGNOSTICS_HPP
#define BAYESEL_DIAGNOSTICS_HPP

#include <functional>
#include <string>
#include <vector>

#include "bayesel/two_step_mh.hpp"

namespace bayesel {

struct ParamSummary {
  std::string name;
  double mean = 0.0;
  double sd = 0.0;
  double q025 = 0.0;
  double median = 0.0;
  double q975 = 0.0;
};

// Extra reported quantity computed from each recorded state row.
struct DerivedColumn {
  std::string name;
  std::function<double(const Eigen::Ref<const Eigen::RowVectorXd>&)> fn;
};

// Post-burn-in summaries with type-7 quantiles. EmptyTraceError when nothing
// survives the burn-in.
std::vector<ParamSummary> summarize(const Trace& trace,
                                    const std::vector<DerivedColumn>& derived = {});
ParamSummary summarize_series(const std::string& name, const Vector& values);

struct HwResult {
  bool stationary = false;
  double kept_fraction = 0.0;  // share of the series the passing segment keeps
  double pvalue = 0.0;         // Cramer-von Mises p-value of the final segment
  bool halfwidth_ok = false;   // 95% CI halfwidth within rel_precision of the mean
};

// Stationarity scan: Cramer-von Mises statistic of the standardized cumulative
// sums, with the spectral density at zero taken from the second half of the
// series; drops the leading 10% at a time up to 50% until the test passes.
HwResult heidelberger_welch(const Vector& series, double alpha = 0.05,
                            double rel_precision = 0.1);

// Spectral density at zero: log-periodogram regression on the first
// 0.5*sqrt(length) ordinates, adjacent ordinates averaged in pairs.
double spectrum0(const Vector& series);

// CDF of the asymptotic Cramer-von Mises distribution.
double pcramer(double q);

// Effective sample size by the initial positive sequence truncation, clamped
// to (0, length].
double ess(const Vector& series);

struct AcceptanceEntry {
  std::string label;
  long accepted = 0;
  long proposed = 0;
  double rate = 0.0;
};

// Per-move-type acceptance rates from the trace's move ledger; traces read
// back from CSV fall back to a single overall entry.
std::vector<AcceptanceEntry> acceptance_report(const Trace& trace);

std::string summary_text(const std::vector<ParamSummary>& rows);
std::string summary_json(const std::vector<ParamSummary>& rows);

struct ColumnDiagnostics {
  std::string name;
  HwResult hw;
  double ess_value = 0.0;
};

std::vector<ColumnDiagnostics> diagnose_trace(const Trace& trace,
                                              const std::vector<DerivedColumn>& derived = {});
std::string diagnostics_text(const std::vector<ColumnDiagnostics>& cols,
                             const std::vector<AcceptanceEntry>& acceptance);
std::string diagnostics_json(const std::vector<ParamSummary>& summaries,
                             const std::vector<ColumnDiagnostics>& cols,
                             const std::vector<AcceptanceEntry>& acceptance);

}  // namespace bayesel

#endif

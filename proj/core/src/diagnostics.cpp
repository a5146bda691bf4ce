#include "bayesel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <boost/math/special_functions/bessel.hpp>
#include <nlohmann/json.hpp>

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

namespace {

double quantile_type7(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = (static_cast<double>(n) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, n - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Matrix post_burn_columns(const Trace& trace,
                         const std::vector<DerivedColumn>& derived,
                         std::vector<std::string>& names) {
  const Eigen::Index total = trace.states.rows();
  const Eigen::Index from = trace.burn_in;
  if (total - from < 1) throw EmptyTraceError("no samples after burn-in");
  const Eigen::Index rows = total - from;
  const Eigen::Index base = trace.states.cols();
  Matrix out(rows, base + static_cast<Eigen::Index>(derived.size()));
  out.leftCols(base) = trace.states.bottomRows(rows);
  names = trace.names;
  for (std::size_t d = 0; d < derived.size(); ++d) {
    names.push_back(derived[d].name);
    for (Eigen::Index t = 0; t < rows; ++t)
      out(t, base + static_cast<Eigen::Index>(d)) =
          derived[d].fn(trace.states.row(from + t));
  }
  return out;
}

// DFT power at frequency j/n via Goertzel recursion.
double periodogram_ordinate(const Vector& x, Eigen::Index j) {
  const Eigen::Index n = x.size();
  const double w = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n);
  const double coeff = 2.0 * std::cos(w);
  double s0 = 0.0, s1 = 0.0, s2 = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    s0 = x[t] + coeff * s1 - s2;
    s2 = s1;
    s1 = s0;
  }
  const double power = s1 * s1 + s2 * s2 - coeff * s1 * s2;
  return power / static_cast<double>(n);
}

double cvm_statistic(const double* y, Eigen::Index n, double s0) {
  double mean = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) mean += y[t];
  mean /= static_cast<double>(n);
  double cum = 0.0, acc = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) {
    cum += y[t] - mean;
    acc += cum * cum;
  }
  return acc / (static_cast<double>(n) * static_cast<double>(n) * s0);
}

}  // namespace

ParamSummary summarize_series(const std::string& name, const Vector& values) {
  if (values.size() < 1) throw EmptyTraceError("summarize: empty series");
  ParamSummary s;
  s.name = name;
  const double n = static_cast<double>(values.size());
  s.mean = values.mean();
  s.sd = values.size() > 1
             ? std::sqrt((values.array() - s.mean).square().sum() / (n - 1.0))
             : 0.0;
  std::vector<double> sorted(values.data(), values.data() + values.size());
  std::sort(sorted.begin(), sorted.end());
  s.q025 = quantile_type7(sorted, 0.025);
  s.median = quantile_type7(sorted, 0.5);
  s.q975 = quantile_type7(sorted, 0.975);
  return s;
}

std::vector<ParamSummary> summarize(const Trace& trace,
                                    const std::vector<DerivedColumn>& derived) {
  std::vector<std::string> names;
  const Matrix cols = post_burn_columns(trace, derived, names);
  std::vector<ParamSummary> out;
  out.reserve(names.size());
  for (Eigen::Index j = 0; j < cols.cols(); ++j)
    out.push_back(summarize_series(names[static_cast<std::size_t>(j)], cols.col(j)));
  return out;
}

double spectrum0(const Vector& series) {
  const Eigen::Index n = series.size();
  if (n < 32) throw TooShortError("spectrum0: series too short");
  Vector x = series.array() - series.mean();

  Eigen::Index K = static_cast<Eigen::Index>(0.5 * std::sqrt(static_cast<double>(n)));
  K = std::clamp<Eigen::Index>(K, 4, n / 2 - 1);
  if (K % 2 == 1) --K;

  const Eigen::Index pairs = K / 2;
  // E[log of an averaged ordinate pair] undershoots log S by digamma(2)-log 2.
  const double bias = 0.270362845461478;
  double sf = 0.0, sy = 0.0, sff = 0.0, sfy = 0.0;
  bool degenerate = false;
  for (Eigen::Index m = 0; m < pairs; ++m) {
    const double i1 = periodogram_ordinate(x, 2 * m + 1);
    const double i2 = periodogram_ordinate(x, 2 * m + 2);
    const double avg = 0.5 * (i1 + i2);
    if (!(avg > 0.0)) {
      degenerate = true;
      break;
    }
    const double f = (static_cast<double>(2 * m + 1) + static_cast<double>(2 * m + 2)) /
                     (2.0 * static_cast<double>(n));
    const double yv = std::log(avg) + bias;
    sf += f;
    sy += yv;
    sff += f * f;
    sfy += f * yv;
  }
  if (degenerate) return 0.0;  // numerically constant series
  const double p = static_cast<double>(pairs);
  const double denom = p * sff - sf * sf;
  const double slope = denom != 0.0 ? (p * sfy - sf * sy) / denom : 0.0;
  const double intercept = (sy - slope * sf) / p;
  return std::exp(intercept);
}

double pcramer(double q) {
  if (!(q > 0.0)) return 0.0;
  double f = 0.0;
  // The summand decays like exp(-2u) once u = a^2/(16q) is past its minimum,
  // so run the series until the terms stop mattering; small q needs few terms,
  // large q ~ sqrt(q) of them.
  for (int k = 0; k <= 200; ++k) {
    const double a = 4.0 * k + 1.0;
    const double u = a * a / (16.0 * q);
    if (u > 700.0) break;
    const double coef = std::tgamma(k + 0.5) * std::sqrt(a) /
                        (std::tgamma(static_cast<double>(k) + 1.0) *
                         std::pow(M_PI, 1.5) * std::sqrt(q));
    const double term = coef * std::exp(-u) * boost::math::cyl_bessel_k(0.25, u);
    f += term;
    if (u > 1.0 && term < 1e-16) break;
  }
  return std::clamp(f, 0.0, 1.0);
}

HwResult heidelberger_welch(const Vector& series, double alpha, double rel_precision) {
  const Eigen::Index n = series.size();
  if (n < 64) throw TooShortError("heidelberger_welch: series too short");

  HwResult res;
  const Vector second_half = series.tail(n / 2);
  const double s0 = spectrum0(second_half);
  if (!(s0 > 1e-300)) {
    // Degenerate (constant) series: trivially stationary and precise.
    res.stationary = true;
    res.kept_fraction = 1.0;
    res.pvalue = 1.0;
    res.halfwidth_ok = true;
    return res;
  }

  Eigen::Index kept_from = 0;
  for (int step = 0; step <= 5; ++step) {
    const Eigen::Index from =
        static_cast<Eigen::Index>(std::floor(0.1 * step * static_cast<double>(n)));
    const Eigen::Index len = n - from;
    const double stat = cvm_statistic(series.data() + from, len, s0);
    res.pvalue = 1.0 - pcramer(stat);
    if (res.pvalue > alpha) {
      res.stationary = true;
      kept_from = from;
      break;
    }
  }
  if (!res.stationary) {
    res.kept_fraction = 0.0;
    res.halfwidth_ok = false;
    return res;
  }

  const Eigen::Index len = n - kept_from;
  res.kept_fraction = static_cast<double>(len) / static_cast<double>(n);
  const Vector kept = series.tail(len);
  const double mean = kept.mean();
  const double s0_kept = spectrum0(kept);
  const double halfwidth = 1.959963984540054 * std::sqrt(s0_kept / static_cast<double>(len));
  res.halfwidth_ok =
      halfwidth <= 1e-12 || std::abs(halfwidth) <= rel_precision * std::abs(mean);
  return res;
}

double ess(const Vector& series) {
  const Eigen::Index n = series.size();
  if (n < 4) throw TooShortError("ess: series too short");
  const double len = static_cast<double>(n);
  const double mean = series.mean();
  Vector x = series.array() - mean;

  auto gamma_at = [&](Eigen::Index k) {
    double s = 0.0;
    for (Eigen::Index t = 0; t + k < n; ++t) s += x[t] * x[t + k];
    return s / len;
  };

  const double g0 = gamma_at(0);
  if (!(g0 > 0.0)) return len;  // constant series

  // Sum of adjacent autocovariance pairs while they stay positive.
  double asy_var = -g0;
  for (Eigen::Index m = 0; 2 * m + 1 < n; ++m) {
    const double pair = gamma_at(2 * m) + gamma_at(2 * m + 1);
    if (pair <= 0.0) break;
    asy_var += 2.0 * pair;
  }
  if (asy_var <= 0.0) return len;
  return std::clamp(len * g0 / asy_var, 1.0, len);
}

std::vector<AcceptanceEntry> acceptance_report(const Trace& trace) {
  std::vector<AcceptanceEntry> out;
  if (!trace.move_counts.empty()) {
    for (const auto& mc : trace.move_counts) {
      AcceptanceEntry e{mc.label, mc.accepted, mc.proposed, 0.0};
      e.rate = mc.proposed > 0
                   ? static_cast<double>(mc.accepted) / static_cast<double>(mc.proposed)
                   : 0.0;
      out.push_back(e);
    }
    return out;
  }
  AcceptanceEntry overall{"overall", 0, static_cast<long>(trace.accepted.size()), 0.0};
  for (const auto a : trace.accepted)
    if (a > 0) ++overall.accepted;
  overall.rate = overall.proposed > 0 ? static_cast<double>(overall.accepted) /
                                            static_cast<double>(overall.proposed)
                                      : 0.0;
  out.push_back(overall);
  return out;
}

std::vector<ColumnDiagnostics> diagnose_trace(const Trace& trace,
                                              const std::vector<DerivedColumn>& derived) {
  std::vector<std::string> names;
  const Matrix cols = post_burn_columns(trace, derived, names);
  std::vector<ColumnDiagnostics> out;
  for (Eigen::Index j = 0; j < cols.cols(); ++j) {
    ColumnDiagnostics cd;
    cd.name = names[static_cast<std::size_t>(j)];
    cd.hw = heidelberger_welch(cols.col(j));
    cd.ess_value = ess(cols.col(j));
    out.push_back(cd);
  }
  return out;
}

std::string summary_text(const std::vector<ParamSummary>& rows) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << "parameter            mean        sd      2.5%    median     97.5%\n";
  for (const auto& r : rows) {
    os.width(16);
    os << std::left << r.name << std::right;
    for (const double v : {r.mean, r.sd, r.q025, r.median, r.q975}) {
      os.width(10);
      os << v;
    }
    os << '\n';
  }
  return os.str();
}

std::string summary_json(const std::vector<ParamSummary>& rows) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    j.push_back({{"name", r.name},
                 {"mean", r.mean},
                 {"sd", r.sd},
                 {"q025", r.q025},
                 {"median", r.median},
                 {"q975", r.q975}});
  }
  return j.dump(2);
}

std::string diagnostics_text(const std::vector<ColumnDiagnostics>& cols,
                             const std::vector<AcceptanceEntry>& acceptance) {
  std::ostringstream os;
  os << "parameter            stationary  kept   p-value  halfwidth  ess\n";
  for (const auto& c : cols) {
    os.width(16);
    os << std::left << c.name << std::right << "  ";
    os << (c.hw.stationary ? "yes" : "no ") << "    ";
    os.setf(std::ios::fixed);
    os.precision(2);
    os.width(5);
    os << c.hw.kept_fraction;
    os.precision(4);
    os.width(9);
    os << c.hw.pvalue << "  ";
    os << (c.hw.halfwidth_ok ? "ok  " : "fail") << "     ";
    os.precision(1);
    os << c.ess_value << '\n';
  }
  os << "\nacceptance\n";
  for (const auto& a : acceptance) {
    os.width(16);
    os << std::left << a.label << std::right << "  " << a.accepted << "/"
       << a.proposed << "  ";
    os.setf(std::ios::fixed);
    os.precision(4);
    os << a.rate << '\n';
  }
  return os.str();
}

std::string diagnostics_json(const std::vector<ParamSummary>& summaries,
                             const std::vector<ColumnDiagnostics>& cols,
                             const std::vector<AcceptanceEntry>& acceptance) {
  nlohmann::ordered_json j;
  j["summary"] = nlohmann::ordered_json::parse(summary_json(summaries));
  j["stationarity"] = nlohmann::ordered_json::array();
  for (const auto& c : cols) {
    j["stationarity"].push_back({{"name", c.name},
                                 {"stationary", c.hw.stationary},
                                 {"kept_fraction", c.hw.kept_fraction},
                                 {"pvalue", c.hw.pvalue},
                                 {"halfwidth_ok", c.hw.halfwidth_ok},
                                 {"ess", c.ess_value}});
  }
  j["acceptance"] = nlohmann::ordered_json::array();
  for (const auto& a : acceptance) {
    j["acceptance"].push_back({{"label", a.label},
                               {"accepted", a.accepted},
                               {"proposed", a.proposed},
                               {"rate", a.rate}});
  }
  return j.dump(2);
}

}  // namespace bayesel

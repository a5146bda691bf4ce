#include "bayesel/distributions.hpp"

#include <boost/math/distributions/normal.hpp>

namespace bayesel {

namespace {
constexpr double half_log_two_pi = 0.91893853320467274178;
}

double log_normal_pdf(double x, double mean, double variance) {
  if (!(variance > 0.0)) return neg_inf;
  const double d = x - mean;
  return -half_log_two_pi - 0.5 * std::log(variance) - 0.5 * d * d / variance;
}

double log_inv_gamma_pdf(double x, double shape, double scale) {
  if (!(x > 0.0)) return neg_inf;
  return shape * std::log(scale) - std::lgamma(shape) -
         (shape + 1.0) * std::log(x) - scale / x;
}

double log_double_exp_pdf(double x, double mu, double b) {
  if (!(b > 0.0)) return neg_inf;
  return -std::log(2.0 * b) - std::abs(x - mu) / b;
}

double log_trunc_normal_lower_pdf(double x, double mean, double sd, double lower) {
  if (x < lower) return neg_inf;
  // log of the untruncated density minus log of the mass above `lower`.
  const double tail = norm_sf((lower - mean) / sd);
  if (!(tail > 0.0)) return neg_inf;
  return log_normal_pdf(x, mean, sd * sd) - std::log(tail);
}

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double norm_sf(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double norm_quantile(double p) {
  static const boost::math::normal_distribution<double> unit(0.0, 1.0);
  return boost::math::quantile(unit, p);
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace bayesel

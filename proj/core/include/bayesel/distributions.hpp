#ifndef BAYESEL_DISTRIBUTIONS_HPP
#define BAYESEL_DISTRIBUTIONS_HPP

#include <cmath>
#include <limits>

namespace bayesel {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// Normal(mean, variance).
double log_normal_pdf(double x, double mean, double variance);

// Inverse gamma with shape a and scale b: density proportional to
// x^{-a-1} exp(-b/x) on x > 0; -inf otherwise.
double log_inv_gamma_pdf(double x, double shape, double scale);

// Double exponential (Laplace) with location mu and scale b.
double log_double_exp_pdf(double x, double mu, double b);

// Normal(mean, sd^2) truncated to [lower, inf), normalized by the upper tail mass.
double log_trunc_normal_lower_pdf(double x, double mean, double sd, double lower);

// Standard normal CDF, survival function and quantile.
double norm_cdf(double x);
double norm_sf(double x);
double norm_quantile(double p);

double log_beta(double a, double b);

}  // namespace bayesel

#endif

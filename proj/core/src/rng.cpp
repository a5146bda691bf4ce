#include "bayesel/rng.hpp"

#include <algorithm>

#include "bayesel/distributions.hpp"

namespace bayesel {

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id & 0xffffffffu),
                    static_cast<std::uint32_t>(stream_id >> 32)};
  engine_.seed(seq);
}

double RngStream::uniform() {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  return d(engine_);
}

double RngStream::normal() {
  std::normal_distribution<double> d(0.0, 1.0);
  return d(engine_);
}

double RngStream::normal(double mean, double sd) {
  return mean + sd * normal();
}

double RngStream::gamma(double shape, double scale) {
  std::gamma_distribution<double> d(shape, scale);
  return d(engine_);
}

double RngStream::inv_gamma(double shape, double scale) {
  // If G ~ Gamma(shape, 1) then scale / G is inverse gamma with scale `scale`.
  double g = 0.0;
  do {
    g = gamma(shape, 1.0);
  } while (!(g > 0.0));
  return scale / g;
}

double RngStream::trunc_normal_lower(double mean, double sd, double lower) {
  const double a = norm_cdf((lower - mean) / sd);
  const double u = uniform();
  // Map U(0,1) onto the surviving CDF interval; clamp guards the open-interval
  // requirement of the quantile function.
  const double p = std::clamp(a + u * (1.0 - a), 1e-16, 1.0 - 1e-16);
  return mean + sd * norm_quantile(p);
}

}  // namespace bayesel

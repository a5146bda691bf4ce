#ifndef BAYESEL_RNG_HPP
#define BAYESEL_RNG_HPP

#include <cstdint>
#include <random>

namespace bayesel {

// Deterministic stream derived from (seed, stream id). Concurrent chains get
// distinct ids; draws for a fixed (seed, id) pair replay identically.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0);

  double uniform();                       // U(0,1)
  double normal();                        // N(0,1)
  double normal(double mean, double sd);
  double gamma(double shape, double scale);
  double inv_gamma(double shape, double scale);
  // Normal(mean, sd^2) conditioned on being >= lower, drawn by inverse CDF so
  // exactly one uniform is consumed regardless of the truncation point.
  double trunc_normal_lower(double mean, double sd, double lower);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace bayesel

#endif

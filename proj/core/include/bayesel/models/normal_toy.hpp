#ifndef BAYESEL_MODELS_NORMAL_TOY_HPP
#define BAYESEL_MODELS_NORMAL_TOY_HPP

#include <cstdint>

#include "bayesel/model.hpp"

namespace bayesel {

// Location-scale model on iid draws: the mean constraint identifies
// theta1 = (mu), the squared-residual constraint identifies theta2 = (sigma2).
// Wide normal prior on mu, IG(0.001, 0.001) on sigma2, and the variance
// equation is affine in sigma2 so the profile maximizer is closed form.
ElModel make_normal_toy(const Vector& x);

// iid Normal(mu, sigma^2) sample, deterministic per seed.
Vector normal_toy_data(std::uint64_t seed, int n, double mu, double sigma);

struct GridSpec {
  double t1_lo = 0.0, t1_hi = 1.0;
  double t2_lo = 0.0, t2_hi = 1.0;
  int n1 = 0, n2 = 0;
};

// Box certain to contain the posterior support: mu spans the sample range and
// sigma2 runs up to the squared range. Mean constraints force mu strictly
// inside (min, max) and the residual constraint caps sigma2 by the largest
// squared deviation, which is below range^2 there.
GridSpec toy_grid_box(const Vector& x, int n1, int n2);

// Unnormalized log posterior at cell centers; entry (i, j) is the cell with
// theta1 index i and theta2 index j; -inf where infeasible.
Matrix toy_grid_log_post(const ElModel& model, const GridSpec& spec);

// Cell masses normalized to total 1; requires at least one finite cell.
Matrix normalize_grid(const Matrix& log_post);

}  // namespace bayesel

#endif

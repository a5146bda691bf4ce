#ifndef BAYESEL_MODELS_RAT_HPP
#define BAYESEL_MODELS_RAT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "bayesel/gibbs.hpp"
#include "bayesel/types.hpp"

namespace bayesel {

// Growth curves y_ij = theta1_i + theta2_i (t_j - t_bar) + eps_ij for 30
// animals weighed at 5 common times, with hierarchical normal priors on the
// per-animal pairs and a single error variance entering one pooled constraint.
struct RatData {
  Matrix y;   // 30 x 5 masses
  Vector t;   // measurement times, strictly increasing, mean 22
  double t_bar = 22.0;

  int n_rats() const { return static_cast<int>(y.rows()); }
  int n_times() const { return static_cast<int>(y.cols()); }
};

// The bundled dataset, compiled in; load_rat_data reads the same layout from
// CSV (header row, 30 rows x 5 mass columns, times fixed).
RatData default_rat_data();
RatData load_rat_data(const std::string& path);

Matrix rat_residuals(const RatData& data, const Vector& theta1, const Vector& theta2);

// Dense 150 x 61 constraint layout: per animal a residual column and a
// time-weighted score column (uncentered times), then the pooled
// squared-residual column. Columns 2i, 2i+1 vanish off animal i's rows.
ConstraintMatrix rat_constraints(const RatData& data, const Vector& theta1,
                                 const Vector& theta2, double sigma2_eps);

// Structured solves exploiting that layout; they agree with solve_el on
// rat_constraints to solver tolerance and are the ones the chain runs on.
struct RatElResult {
  bool feasible = false;
  double log_el = 0.0;
  Vector lambda;  // 61 multipliers in the dense column order
  int iterations = 0;
};

// Full 61-constraint problem; warm (when given) seeds the multipliers.
RatElResult rat_solve_full(const RatData& data, const Vector& theta1,
                           const Vector& theta2, double sigma2_eps,
                           const Vector* warm = nullptr);

struct RatTrialResult {
  bool feasible = false;
  double sigma2_mcele = 0.0;  // sum_ij nu_ij r_ij^2
  double trial_log_el = 0.0;
  Vector lambda;              // 60 block multipliers
};

// Trial problem (no pooled constraint): separates into 30 independent 2-D
// dual solves sharing the global quadratic-extension threshold.
RatTrialResult rat_solve_trial(const RatData& data, const Vector& theta1,
                               const Vector& theta2);

struct RatConfig {
  double theta1_walk_sd = 0.3;
  double theta2_walk_sd = 0.03;
  double sigma2_eps_walk_sd = 5.0;
  int length = 150000;
  int burn_in = 50000;
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;
};

// State layout of the chain: theta1_1..30, theta2_1..30, theta1c, theta2c,
// sigma2_1, sigma2_2, sigma2_eps.
std::vector<std::string> rat_param_names();

// Per-animal least squares plus moment-matched hyperparameters; the pooled
// mean squared residual makes the uniform weights exactly feasible there.
Vector rat_init_state(const RatData& data);

double rat_log_posterior(const RatData& data, const Vector& state);

// Metropolis within Gibbs: conjugate draws for the four hyperparameters, a
// systematic scan of per-animal pairs, then the error variance proposed from a
// truncated normal centered at its profile maximizer.
Trace run_rat_chain(const RatData& data, const RatConfig& config);

}  // namespace bayesel

#endif

#ifndef BAYESEL_LINEAR_MODEL_HPP
#define BAYESEL_LINEAR_MODEL_HPP

#include <cstdint>
#include <vector>

#include "bayesel/el_solver.hpp"
#include "bayesel/rng.hpp"
#include "bayesel/types.hpp"

namespace bayesel {

// Mean-zero linear model without intercept; inclusion masks pick columns of x.
struct RegressionData {
  Vector y;  // n
  Matrix x;  // n x s
  bool standardized = false;

  Eigen::Index n() const { return y.size(); }
  int s() const { return static_cast<int>(x.cols()); }
};

// Center and scale every column (and y) to zero mean, unit sample sd.
RegressionData standardize(const RegressionData& data);

using GammaMask = std::vector<std::uint8_t>;

std::vector<int> included_indices(const GammaMask& gamma);
int model_size(const GammaMask& gamma);
std::string gamma_bits(const GammaMask& gamma);

// n x (s+2) constraint matrix at (gamma, beta, sigma2): residual column first,
// then x_ij * r_i for every covariate (included or not), then r_i^2 - sigma2.
ConstraintMatrix build_ms_constraints(const RegressionData& data, const GammaMask& gamma,
                                      const Vector& beta, double sigma2);

// Deterministic minimum-norm least squares on the included columns; collinear
// selections get the shortest solution, the empty model an empty vector.
Vector ols(const RegressionData& data, const GammaMask& gamma);

struct MceleSigma2Result {
  bool feasible = false;
  double sigma2 = 0.0;      // sum_i nu_i r_i^2
  double trial_log_el = 0.0;
  Vector nu;
};

// Trial problem under the residual and covariate-orthogonality constraints
// only; its weights give the variance coordinate its profile maximizer.
MceleSigma2Result mcele_sigma2(const RegressionData& data, const GammaMask& gamma,
                               const Vector& beta, const SolverOptions& opts = {});

// Cross-dimensional map anchored at the models' least-squares and trial
// maximizers: shared coordinates shift by the anchor difference, a fresh
// coordinate is the innovation u around its anchor, and the variance moves by
// the difference of the trial maximizers. Unit Jacobian by construction.
struct MapResult {
  bool trial_feasible = false;
  Vector beta;                // destination model's coefficients
  double sigma2 = 0.0;
  double sigma2_mcele = 0.0;  // trial maximizer at the mapped beta
  double trial_log_el = 0.0;
  double u = 0.0;             // birth: echoed input; death: implied innovation
};

MapResult map_up(const RegressionData& data, const GammaMask& gamma_from, int j,
                 const Vector& beta_from, double sigma2_from, double sigma2_mcele_from,
                 double u, const Vector& beta_hat_from, const Vector& beta_hat_to,
                 const SolverOptions& opts = {});

MapResult map_down(const RegressionData& data, const GammaMask& gamma_from, int j,
                   const Vector& beta_from, double sigma2_from, double sigma2_mcele_from,
                   const Vector& beta_hat_from, const Vector& beta_hat_to,
                   const SolverOptions& opts = {});

// log P(gamma) with inclusion probability integrated against Beta(a, b):
// log B(a+k, b+s-k) - log B(a, b).
double log_model_prior_beta_binomial(int k, int s, double a = 2.0, double b = 7.0);

// Conjugate draw for the double-exponential scale given the active coefficients.
double gibbs_lambda(RngStream& rng, const Vector& beta, double a0 = 5.0,
                    double b0 = 5.0);

}  // namespace bayesel

#endif

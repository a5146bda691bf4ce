#ifndef BAYESEL_MODEL_HPP
#define BAYESEL_MODEL_HPP

#include <functional>

#include "bayesel/el_solver.hpp"
#include "bayesel/types.hpp"

namespace bayesel {

// Estimating-equation model over a fixed data matrix (one row per observation).
// g depends on theta1 only and fills l values; h sees both blocks and fills d
// values. log_prior returns -inf outside the support.
struct ElModel {
  Matrix data;  // n x v
  int theta1_dim = 0;
  int theta2_dim = 0;
  int g_dim = 0;
  int h_dim = 0;

  std::function<void(const Eigen::Ref<const Eigen::RowVectorXd>&, const Vector&,
                     Eigen::Ref<Vector>)>
      g_eval;
  std::function<void(const Eigen::Ref<const Eigen::RowVectorXd>&, const Vector&,
                     const Vector&, Eigen::Ref<Vector>)>
      h_eval;
  std::function<double(const Vector&, const Vector&)> log_prior;

  // Optional: exact solution of sum_i nu_i h(x_i, theta1, theta2) = 0 in theta2
  // when h is affine in theta2. Present => the root solver is bypassed.
  std::function<Vector(const Matrix& data, const Vector& theta1, const Vector& nu)>
      theta2_closed_form;
  // Optional deterministic seed for the iterative root solve; must depend on
  // theta1 and the trial weights only. Defaults to the zero vector.
  std::function<Vector(const Matrix& data, const Vector& theta1, const Vector& nu)>
      theta2_init;

  Eigen::Index n() const { return data.rows(); }
};

// Stacked n x (l + d) constraint matrix at theta, g columns first.
ConstraintMatrix build_constraints(const ElModel& model, const ThetaSplit& theta);

// g-only n x l matrix for the trial problem at theta1.
ConstraintMatrix build_g_constraints(const ElModel& model, const Vector& theta1);

// log prior + log EL at theta; -inf when the prior vanishes or the EL problem
// is infeasible. The EL solve is skipped on zero prior mass.
double log_posterior_unnorm(const ElModel& model, const ThetaSplit& theta,
                            const SolverOptions& opts = {});

}  // namespace bayesel

#endif

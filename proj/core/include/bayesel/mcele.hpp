#ifndef BAYESEL_MCELE_HPP
#define BAYESEL_MCELE_HPP

#include "bayesel/model.hpp"

namespace bayesel {

struct MceleResult {
  bool feasible = false;
  Vector theta2_hat;     // maximizer of the profile EL at theta1
  Vector trial_weights;  // nu-hat from the g-only problem
  double trial_log_el = 0.0;
};

struct RootOptions {
  double tol = 1e-8;  // infinity norm of the weighted h residual
  int max_iterations = 100;
  int max_halvings = 20;
};

// EL restricted to the structural constraints only; the feasible set of this
// problem depends on theta1 alone.
ELSolution trial_weights(const ElModel& model, const Vector& theta1,
                         const SolverOptions& opts = {});

// Solves sum_i nu_i h(x_i, theta1, theta2) = 0 for theta2. Uses the model's
// closed form when declared, otherwise damped Broyden seeded by a forward
// difference Jacobian. Throws RootNotFoundError on exhaustion.
Vector solve_theta2(const ElModel& model, const Vector& theta1, const Vector& nu,
                    const RootOptions& opts = {});

// Trial weights plus the root solve. Deterministic in theta1: repeated calls
// with the same theta1 return identical results. feasible=false short-circuits
// without root solving; it is also reported when the solved theta2 fails to
// make nu-hat a feasible point of the full problem.
MceleResult mcele(const ElModel& model, const Vector& theta1,
                  const SolverOptions& solver_opts = {},
                  const RootOptions& root_opts = {});

}  // namespace bayesel

#endif

#include "bayesel/model.hpp"

#include <cmath>

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

namespace {

void check_dims(const ElModel& model, const Vector& theta1) {
  if (model.n() < 1) throw DimensionError("model: empty data matrix");
  if (theta1.size() != model.theta1_dim)
    throw DimensionError("model: theta1 size mismatch");
}

}  // namespace

ConstraintMatrix build_constraints(const ElModel& model, const ThetaSplit& theta) {
  check_dims(model, theta.theta1);
  if (theta.theta2.size() != model.theta2_dim)
    throw DimensionError("model: theta2 size mismatch");
  const Eigen::Index n = model.n();
  const int l = model.g_dim;
  const int d = model.h_dim;
  ConstraintMatrix C(n, l + d);
  Vector gi(l), hi(d);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (l > 0) {
      model.g_eval(model.data.row(i), theta.theta1, gi);
      C.row(i).head(l) = gi.transpose();
    }
    if (d > 0) {
      model.h_eval(model.data.row(i), theta.theta1, theta.theta2, hi);
      C.row(i).tail(d) = hi.transpose();
    }
  }
  return C;
}

ConstraintMatrix build_g_constraints(const ElModel& model, const Vector& theta1) {
  check_dims(model, theta1);
  const Eigen::Index n = model.n();
  const int l = model.g_dim;
  ConstraintMatrix G(n, l);
  Vector gi(l);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (l > 0) {
      model.g_eval(model.data.row(i), theta1, gi);
      G.row(i) = gi.transpose();
    }
  }
  return G;
}

double log_posterior_unnorm(const ElModel& model, const ThetaSplit& theta,
                            const SolverOptions& opts) {
  const double lp = model.log_prior(theta.theta1, theta.theta2);
  if (!(lp > neg_inf)) return neg_inf;
  const ELSolution sol = solve_el(build_constraints(model, theta), opts);
  if (!sol.feasible) return neg_inf;
  return sol.log_el + lp;
}

}  // namespace bayesel

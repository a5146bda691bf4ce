#include "bayesel/mcele.hpp"

#include <cmath>

#include "bayesel/errors.hpp"

namespace bayesel {

namespace {

Vector weighted_h(const ElModel& model, const Vector& theta1, const Vector& theta2,
                  const Vector& nu) {
  const Eigen::Index n = model.n();
  Vector acc = Vector::Zero(model.h_dim);
  Vector hi(model.h_dim);
  for (Eigen::Index i = 0; i < n; ++i) {
    model.h_eval(model.data.row(i), theta1, theta2, hi);
    acc += nu[i] * hi;
  }
  return acc;
}

Matrix fd_jacobian(const ElModel& model, const Vector& theta1, const Vector& nu,
                   const Vector& theta2, const Vector& f0) {
  const int q = model.theta2_dim;
  Matrix J(q, q);
  for (int j = 0; j < q; ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(theta2[j]));
    Vector tp = theta2;
    tp[j] += h;
    J.col(j) = (weighted_h(model, theta1, tp, nu) - f0) / h;
  }
  return J;
}

}  // namespace

ELSolution trial_weights(const ElModel& model, const Vector& theta1,
                         const SolverOptions& opts) {
  return solve_el(build_g_constraints(model, theta1), opts);
}

Vector solve_theta2(const ElModel& model, const Vector& theta1, const Vector& nu,
                    const RootOptions& opts) {
  if (model.h_dim != model.theta2_dim)
    throw DimensionError("solve_theta2: h dimension must match theta2 dimension");
  if (model.theta2_dim == 0) return Vector(0);
  if (model.theta2_closed_form)
    return model.theta2_closed_form(model.data, theta1, nu);

  Vector theta2 = model.theta2_init
                      ? model.theta2_init(model.data, theta1, nu)
                      : Vector::Zero(model.theta2_dim);
  Vector f = weighted_h(model, theta1, theta2, nu);
  double fnorm = f.lpNorm<Eigen::Infinity>();
  if (fnorm <= opts.tol) return theta2;

  Matrix J = fd_jacobian(model, theta1, nu, theta2, f);
  bool refreshed = false;

  for (int it = 0; it < opts.max_iterations; ++it) {
    Vector step = J.fullPivLu().solve(-f);
    if (!step.allFinite()) {
      if (refreshed) throw RootNotFoundError("solve_theta2: singular Jacobian");
      J = fd_jacobian(model, theta1, nu, theta2, f);
      refreshed = true;
      continue;
    }

    double t = 1.0;
    bool moved = false;
    Vector theta_new, f_new;
    double fnorm_new = 0.0;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      theta_new = theta2 + t * step;
      f_new = weighted_h(model, theta1, theta_new, nu);
      fnorm_new = f_new.lpNorm<Eigen::Infinity>();
      if (std::isfinite(fnorm_new) && fnorm_new < fnorm) {
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // One fresh Jacobian before giving up; Broyden updates can go stale.
      if (refreshed) throw RootNotFoundError("solve_theta2: no descent direction");
      J = fd_jacobian(model, theta1, nu, theta2, f);
      refreshed = true;
      continue;
    }

    const Vector dtheta = theta_new - theta2;
    const Vector df = f_new - f;
    theta2 = theta_new;
    f = f_new;
    fnorm = fnorm_new;
    if (fnorm <= opts.tol) return theta2;
    J += (df - J * dtheta) * dtheta.transpose() / dtheta.squaredNorm();
    refreshed = false;
  }
  throw RootNotFoundError("solve_theta2: iteration budget exhausted");
}

MceleResult mcele(const ElModel& model, const Vector& theta1,
                  const SolverOptions& solver_opts, const RootOptions& root_opts) {
  MceleResult res;
  const ELSolution trial = trial_weights(model, theta1, solver_opts);
  if (!trial.feasible) return res;

  res.trial_weights = trial.weights;
  res.trial_log_el = trial.log_el;
  res.theta2_hat = solve_theta2(model, theta1, trial.weights, root_opts);

  // nu-hat strictly positive on the simplex plus a small h residual certifies
  // that the full problem at (theta1, theta2_hat) is feasible.
  if (model.h_dim > 0) {
    const Vector resid = weighted_h(model, theta1, res.theta2_hat, res.trial_weights);
    if (resid.lpNorm<Eigen::Infinity>() > 1e-6) return res;
  }
  res.feasible = true;
  return res;
}

}  // namespace bayesel

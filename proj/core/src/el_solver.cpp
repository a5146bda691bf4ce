#include "bayesel/el_solver.hpp"

#include <cmath>
#include <limits>

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

namespace {

inline double dual_objective(const Vector& z, double eps) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) s -= log_star(z[i], eps);
  return s;
}

}  // namespace

DualResult solve_dual(const ConstraintMatrix& C, Eigen::Index n_total,
                      const SolverOptions& opts) {
  const Eigen::Index n = C.rows();
  const Eigen::Index m = C.cols();
  const double eps = 1.0 / static_cast<double>(n_total);

  DualResult res;
  res.lambda = Vector::Zero(m);

  Vector z = Vector::Ones(n);
  double obj = dual_objective(z, eps);
  Vector grad(m);
  Matrix hess(m, m);
  Vector u(n), d(n);

  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    for (Eigen::Index i = 0; i < n; ++i) {
      u[i] = log_star_d1(z[i], eps);
      d[i] = -log_star_d2(z[i], eps);
    }
    grad.noalias() = -C.transpose() * u;
    res.grad_norm = grad.lpNorm<Eigen::Infinity>();
    if (res.grad_norm <= opts.grad_tol) {
      res.converged = true;
      // The normalized weights are flat in lambda only to first order, so the
      // value still moves linearly with the residual gradient. Two guarded
      // polish steps push it to the rounding floor.
      for (int polish = 0; polish < 2 && res.grad_norm > 0.0; ++polish) {
        for (Eigen::Index i = 0; i < n; ++i) d[i] = -log_star_d2(z[i], eps);
        hess.noalias() = C.transpose() * d.asDiagonal() * C;
        const Vector dir = hess.ldlt().solve(-grad);
        if (!dir.allFinite()) break;
        Vector z_new = Vector::Ones(n);
        z_new.noalias() += C * (res.lambda + dir);
        for (Eigen::Index i = 0; i < n; ++i) u[i] = log_star_d1(z_new[i], eps);
        Vector grad_new = -C.transpose() * u;
        const double g_new = grad_new.lpNorm<Eigen::Infinity>();
        if (g_new >= res.grad_norm) break;
        res.lambda += dir;
        z.swap(z_new);
        grad.swap(grad_new);
        res.grad_norm = g_new;
      }
      break;
    }

    hess.noalias() = C.transpose() * d.asDiagonal() * C;
    Vector dir = hess.ldlt().solve(-grad);
    if (!dir.allFinite()) dir = -grad;

    // Backtracking on the convex dual; any strict decrease is accepted.
    double t = 1.0;
    bool moved = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      Vector z_new = Vector::Ones(n);
      z_new.noalias() += C * (res.lambda + t * dir);
      const double obj_new = dual_objective(z_new, eps);
      if (obj_new < obj) {
        res.lambda += t * dir;
        z.swap(z_new);
        obj = obj_new;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // At the rounding floor of the objective the strict-decrease rule goes
      // blind while the full Newton step still shrinks the gradient by orders
      // of magnitude; accept it on that evidence.
      Vector z_new = Vector::Ones(n);
      z_new.noalias() += C * (res.lambda + dir);
      for (Eigen::Index i = 0; i < n; ++i) u[i] = log_star_d1(z_new[i], eps);
      if ((C.transpose() * u).lpNorm<Eigen::Infinity>() < res.grad_norm) {
        res.lambda += dir;
        z.swap(z_new);
        obj = dual_objective(z, eps);
        moved = true;
      }
    }
    if (!moved) break;  // genuine stall; final checks decide feasibility
    if (res.lambda.lpNorm<Eigen::Infinity>() > opts.multiplier_cap) {
      res.diverged = true;
      break;
    }
  }

  res.iterations = it;
  res.min_z = n > 0 ? z.minCoeff() : 1.0;
  res.inv_z_sum = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) res.inv_z_sum += 1.0 / z[i];
  return res;
}

ELSolution solve_el(const ConstraintMatrix& C, const SolverOptions& opts) {
  const Eigen::Index n = C.rows();
  const Eigen::Index m = C.cols();
  if (n < 1) throw DimensionError("solve_el: constraint matrix has no rows");
  if (m >= n) throw DimensionError("solve_el: need more observations than constraints");
  if (!C.allFinite()) throw NonFiniteError("solve_el: non-finite constraint entry");

  ELSolution sol;
  if (m == 0) {
    // No moment constraints: the maximum sits at the simplex center.
    sol.feasible = true;
    sol.weights = Vector::Constant(n, 1.0 / static_cast<double>(n));
    sol.log_el = -static_cast<double>(n) * std::log(static_cast<double>(n));
    sol.multipliers = Vector(0);
    return sol;
  }

  const DualResult dual = solve_dual(C, n, opts);
  sol.multipliers = dual.lambda;
  sol.iterations = dual.iterations;
  sol.grad_norm = dual.grad_norm;

  const double eps = 1.0 / static_cast<double>(n);
  // A converged dual certifies an interior primal solution only if no z sits in
  // the extended region and the weights actually sum to one; otherwise the
  // minimizer ran toward a solution at infinity of an infeasible problem.
  const bool interior = dual.min_z >= eps;
  const bool mass_ok = std::abs(dual.inv_z_sum / static_cast<double>(n) - 1.0) <= 1e-6;
  if (!dual.converged || dual.diverged || !interior || !mass_ok) {
    sol.feasible = false;
    sol.log_el = neg_inf;
    return sol;
  }

  Vector z = Vector::Ones(n);
  z.noalias() += C * dual.lambda;
  Vector w = (static_cast<double>(n) * z.array()).inverse().matrix();
  w /= w.sum();
  sol.weights = std::move(w);
  sol.log_el = sol.weights.array().log().sum();
  sol.feasible = true;
  return sol;
}

bool check_feasibility(const ConstraintMatrix& C) {
  if (C.rows() < 1) throw DimensionError("check_feasibility: no rows");
  if (!C.allFinite()) throw NonFiniteError("check_feasibility: non-finite entry");
  if (C.cols() == 0) return true;
  if (C.cols() == 1) return C.col(0).minCoeff() < 0.0 && C.col(0).maxCoeff() > 0.0;
  return solve_el(C).feasible;
}

}  // namespace bayesel

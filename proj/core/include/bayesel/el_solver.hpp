#ifndef BAYESEL_EL_SOLVER_HPP
#define BAYESEL_EL_SOLVER_HPP

#include <cmath>

#include "bayesel/types.hpp"

namespace bayesel {

struct SolverOptions {
  double grad_tol = 1e-8;       // infinity norm of the dual gradient
  int max_iterations = 200;
  int max_halvings = 30;
  double multiplier_cap = 1e8;  // divergence past this reads as infeasible
};

// Logarithm with Owen's quadratic extension below eps: matches log, log' and
// log'' at eps, stays concave and finite for all z so the dual objective is
// defined everywhere. Shared by the dense and structured dual solvers.
inline double log_star(double z, double eps) {
  if (z >= eps) return std::log(z);
  return std::log(eps) - 1.5 + 2.0 * z / eps - z * z / (2.0 * eps * eps);
}

inline double log_star_d1(double z, double eps) {
  if (z >= eps) return 1.0 / z;
  return 2.0 / eps - z / (eps * eps);
}

inline double log_star_d2(double z, double eps) {
  if (z >= eps) return -1.0 / (z * z);
  return -1.0 / (eps * eps);
}

struct ELSolution {
  bool feasible = false;
  Vector weights;       // size n when feasible, empty otherwise
  double log_el = 0.0;  // -inf when infeasible; never above -n*log(n)
  Vector multipliers;   // dual variables, size m
  int iterations = 0;
  double grad_norm = 0.0;
};

// Inner dual Newton iteration, shared with structured solvers that decompose a
// bigger problem: rows of C belong to a problem with n_total observations, so
// the quadratic extension of the logarithm kicks in below 1/n_total.
struct DualResult {
  bool converged = false;
  bool diverged = false;  // multiplier cap exceeded
  Vector lambda;
  int iterations = 0;
  double grad_norm = 0.0;
  double min_z = 0.0;      // min_i 1 + lambda^T c_i
  double inv_z_sum = 0.0;  // sum_i 1/(1 + lambda^T c_i); equals n at an interior optimum
};

DualResult solve_dual(const ConstraintMatrix& C, Eigen::Index n_total,
                      const SolverOptions& opts = {});

// Maximizes sum_i log w_i over the probability simplex subject to
// sum_i w_i * C.row(i) = 0. Infeasible problems (origin not interior to the
// convex hull of the rows) come back with feasible=false and log_el = -inf.
ELSolution solve_el(const ConstraintMatrix& C, const SolverOptions& opts = {});

// True iff the EL problem for C has an interior solution. Exact sign test for
// a single column; delegates to the solver otherwise.
bool check_feasibility(const ConstraintMatrix& C);

}  // namespace bayesel

#endif

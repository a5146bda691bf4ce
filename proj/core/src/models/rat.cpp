#include "bayesel/models/rat.hpp"

#include <cmath>
#include <memory>

#include "bayesel/csv.hpp"
#include "bayesel/distributions.hpp"
#include "bayesel/el_solver.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

namespace {

constexpr int kRats = 30;
constexpr int kTimes = 5;
constexpr int kObs = kRats * kTimes;
constexpr int kCons = 2 * kRats + 1;

constexpr double kMasses[kRats][kTimes] = {
    {151, 199, 246, 283, 320}, {145, 199, 249, 293, 354},
    {147, 214, 263, 312, 328}, {155, 200, 237, 272, 297},
    {135, 188, 230, 280, 323}, {159, 210, 252, 298, 331},
    {141, 189, 231, 275, 305}, {159, 201, 248, 297, 338},
    {177, 236, 285, 350, 376}, {134, 182, 220, 260, 296},
    {160, 208, 261, 313, 352}, {143, 188, 220, 273, 314},
    {154, 200, 244, 289, 325}, {171, 221, 270, 326, 358},
    {163, 216, 242, 281, 312}, {160, 207, 248, 288, 324},
    {142, 187, 234, 280, 316}, {156, 203, 243, 283, 317},
    {157, 212, 259, 307, 336}, {152, 203, 246, 286, 321},
    {154, 205, 253, 298, 334}, {139, 190, 225, 267, 302},
    {146, 191, 229, 272, 302}, {157, 211, 250, 285, 323},
    {132, 185, 237, 286, 331}, {160, 207, 257, 303, 345},
    {169, 216, 261, 295, 333}, {157, 205, 248, 289, 316},
    {137, 180, 219, 258, 291}, {153, 200, 244, 286, 324}};

constexpr double kDays[kTimes] = {8, 15, 22, 29, 36};

// Hyperpriors: centers ~ N(0, 100^2), the three variances ~ IG(5/2, 10/2).
constexpr double kCenterPriorVar = 1e4;
constexpr double kVarShape = 2.5;
constexpr double kVarScale = 5.0;

void check_layout(const RatData& data, const Vector& theta1, const Vector& theta2) {
  if (data.y.rows() != kRats || data.y.cols() != kTimes ||
      data.t.size() != kTimes)
    throw DimensionError("rat: data must be 30 animals by 5 times");
  if (theta1.size() != kRats || theta2.size() != kRats)
    throw DimensionError("rat: need one (level, slope) pair per animal");
}

}  // namespace

RatData default_rat_data() {
  RatData d;
  d.y.resize(kRats, kTimes);
  for (int i = 0; i < kRats; ++i)
    for (int j = 0; j < kTimes; ++j) d.y(i, j) = kMasses[i][j];
  d.t.resize(kTimes);
  for (int j = 0; j < kTimes; ++j) d.t[j] = kDays[j];
  d.t_bar = 22.0;
  return d;
}

RatData load_rat_data(const std::string& path) {
  const CsvTable tab = read_csv(path);
  if (tab.values.rows() != kRats || tab.values.cols() != kTimes)
    throw ConfigError("rat data: expected 30 rows x 5 mass columns");
  RatData d = default_rat_data();
  d.y = tab.values;
  return d;
}

Matrix rat_residuals(const RatData& data, const Vector& theta1,
                     const Vector& theta2) {
  check_layout(data, theta1, theta2);
  Matrix r(kRats, kTimes);
  for (int i = 0; i < kRats; ++i)
    for (int j = 0; j < kTimes; ++j)
      r(i, j) = data.y(i, j) - theta1[i] - theta2[i] * (data.t[j] - data.t_bar);
  return r;
}

ConstraintMatrix rat_constraints(const RatData& data, const Vector& theta1,
                                 const Vector& theta2, double sigma2_eps) {
  const Matrix r = rat_residuals(data, theta1, theta2);
  ConstraintMatrix C = ConstraintMatrix::Zero(kObs, kCons);
  for (int i = 0; i < kRats; ++i)
    for (int j = 0; j < kTimes; ++j) {
      const int row = i * kTimes + j;
      C(row, 2 * i) = r(i, j);
      C(row, 2 * i + 1) = data.t[j] * r(i, j);
      C(row, kCons - 1) = r(i, j) * r(i, j) - sigma2_eps;
    }
  return C;
}

RatTrialResult rat_solve_trial(const RatData& data, const Vector& theta1,
                               const Vector& theta2) {
  const Matrix r = rat_residuals(data, theta1, theta2);
  const double eps = 1.0 / kObs;

  RatTrialResult res;
  res.lambda = Vector(2 * kRats);
  Matrix z(kRats, kTimes);
  ConstraintMatrix block(kTimes, 2);
  for (int i = 0; i < kRats; ++i) {
    for (int j = 0; j < kTimes; ++j) {
      block(j, 0) = r(i, j);
      block(j, 1) = data.t[j] * r(i, j);
    }
    const DualResult dual = solve_dual(block, kObs);
    // Same certificate as the dense solver, with the per-block mass identity
    // sum_j 1/z_ij = 5 in place of the global one.
    if (!dual.converged || dual.diverged || dual.min_z < eps ||
        std::abs(dual.inv_z_sum / kTimes - 1.0) > 1e-6)
      return res;
    res.lambda.segment(2 * i, 2) = dual.lambda;
    for (int j = 0; j < kTimes; ++j)
      z(i, j) = 1.0 + block(j, 0) * dual.lambda[0] + block(j, 1) * dual.lambda[1];
  }

  Matrix w = (kObs * z.array()).inverse().matrix();
  w /= w.sum();
  res.sigma2_mcele = (w.array() * r.array().square()).sum();
  res.trial_log_el = w.array().log().sum();
  res.feasible = true;
  return res;
}

RatElResult rat_solve_full(const RatData& data, const Vector& theta1,
                           const Vector& theta2, double sigma2_eps,
                           const Vector* warm) {
  const Matrix r = rat_residuals(data, theta1, theta2);
  const Matrix s = (r.array().square() - sigma2_eps).matrix();
  const double eps = 1.0 / kObs;
  const SolverOptions opts;

  RatElResult res;
  Vector lam = (warm != nullptr && warm->size() == kCons && warm->allFinite())
                   ? *warm
                   : Vector::Zero(kCons);

  Matrix z(kRats, kTimes);
  auto fill_z = [&](const Vector& l, Matrix& out) {
    for (int i = 0; i < kRats; ++i) {
      const double a = l[2 * i], b = l[2 * i + 1], eta = l[kCons - 1];
      for (int j = 0; j < kTimes; ++j)
        out(i, j) = 1.0 + a * r(i, j) + b * data.t[j] * r(i, j) + eta * s(i, j);
    }
  };
  auto objective = [&](const Matrix& zz) {
    double f = 0.0;
    for (int i = 0; i < kRats; ++i)
      for (int j = 0; j < kTimes; ++j) f -= log_star(zz(i, j), eps);
    return f;
  };

  fill_z(lam, z);
  double obj = objective(z);

  Vector grad(kCons), dir(kCons);
  Matrix z_new(kRats, kTimes);
  bool converged = false, diverged = false;
  double grad_norm = 0.0;
  int it = 0;

  for (; it < opts.max_iterations; ++it) {
    // Gradient and the arrowhead Hessian in one pass. Per-animal columns only
    // touch that animal's rows, so the Hessian is 30 2x2 diagonal blocks
    // bordered by the pooled column.
    double g_eta = 0.0, h_ee = 0.0;
    double schur = 0.0, rhs_eta = 0.0;
    // Stashed per-animal solves: dir_i = -Hi^{-1} g_i - Hi^{-1} Bi * d_eta.
    Eigen::Matrix<double, 2, kRats> sol_g, sol_b;
    bool singular = false;

    for (int i = 0; i < kRats; ++i) {
      double g1 = 0, g2 = 0, h11 = 0, h12 = 0, h22 = 0, b1 = 0, b2 = 0;
      for (int j = 0; j < kTimes; ++j) {
        const double zz = z(i, j);
        const double d1 = log_star_d1(zz, eps);
        const double om = -log_star_d2(zz, eps);
        const double c1 = r(i, j), c2 = data.t[j] * r(i, j), cs = s(i, j);
        g1 -= d1 * c1;
        g2 -= d1 * c2;
        g_eta -= d1 * cs;
        h11 += om * c1 * c1;
        h12 += om * c1 * c2;
        h22 += om * c2 * c2;
        b1 += om * c1 * cs;
        b2 += om * c2 * cs;
        h_ee += om * cs * cs;
      }
      grad[2 * i] = g1;
      grad[2 * i + 1] = g2;
      const double det = h11 * h22 - h12 * h12;
      if (!(det > 0.0) || !std::isfinite(det)) {
        singular = true;  // keep filling grad; the fallback step needs it
        continue;
      }
      sol_g(0, i) = (h22 * g1 - h12 * g2) / det;
      sol_g(1, i) = (h11 * g2 - h12 * g1) / det;
      sol_b(0, i) = (h22 * b1 - h12 * b2) / det;
      sol_b(1, i) = (h11 * b2 - h12 * b1) / det;
      schur += b1 * sol_b(0, i) + b2 * sol_b(1, i);
      rhs_eta += b1 * sol_g(0, i) + b2 * sol_g(1, i);
    }
    grad[kCons - 1] = g_eta;

    grad_norm = grad.lpNorm<Eigen::Infinity>();
    if (grad_norm <= opts.grad_tol) {
      converged = true;
      break;
    }

    if (!singular) {
      const double s_den = h_ee - schur;
      if (s_den > 0.0 && std::isfinite(s_den)) {
        const double d_eta = (rhs_eta - g_eta) / s_den;
        dir[kCons - 1] = d_eta;
        for (int i = 0; i < kRats; ++i) {
          dir[2 * i] = -sol_g(0, i) - sol_b(0, i) * d_eta;
          dir[2 * i + 1] = -sol_g(1, i) - sol_b(1, i) * d_eta;
        }
      } else {
        singular = true;
      }
    }
    if (singular) dir = -grad;

    double t = 1.0;
    bool moved = false;
    for (int h = 0; h <= opts.max_halvings; ++h) {
      fill_z(lam + t * dir, z_new);
      const double obj_new = objective(z_new);
      if (obj_new < obj) {
        lam += t * dir;
        z.swap(z_new);
        obj = obj_new;
        moved = true;
        break;
      }
      t *= 0.5;
    }
    if (!moved) {
      // Same rounding-floor endgame as the dense solver: the objective cannot
      // register the last Newton steps, but the gradient still shrinks.
      fill_z(lam + dir, z_new);
      Vector gtmp = Vector::Zero(kCons);
      for (int i = 0; i < kRats; ++i)
        for (int j = 0; j < kTimes; ++j) {
          const double d1 = log_star_d1(z_new(i, j), eps);
          gtmp[2 * i] -= d1 * r(i, j);
          gtmp[2 * i + 1] -= d1 * data.t[j] * r(i, j);
          gtmp[kCons - 1] -= d1 * s(i, j);
        }
      if (gtmp.lpNorm<Eigen::Infinity>() < grad_norm) {
        lam += dir;
        z.swap(z_new);
        obj = objective(z);
        moved = true;
      }
    }
    if (!moved) break;
    if (lam.lpNorm<Eigen::Infinity>() > opts.multiplier_cap) {
      diverged = true;
      break;
    }
  }

  res.iterations = it;
  res.lambda = lam;

  const double min_z = z.minCoeff();
  double inv_sum = 0.0;
  for (int i = 0; i < kRats; ++i)
    for (int j = 0; j < kTimes; ++j) inv_sum += 1.0 / z(i, j);
  const bool mass_ok = std::abs(inv_sum / kObs - 1.0) <= 1e-6;
  if (!converged || diverged || min_z < eps || !mass_ok) {
    res.feasible = false;
    res.log_el = neg_inf;
    return res;
  }

  Matrix w = (kObs * z.array()).inverse().matrix();
  w /= w.sum();
  res.log_el = w.array().log().sum();
  res.feasible = true;
  return res;
}

std::vector<std::string> rat_param_names() {
  std::vector<std::string> names;
  for (int i = 1; i <= kRats; ++i) names.push_back("theta1_" + std::to_string(i));
  for (int i = 1; i <= kRats; ++i) names.push_back("theta2_" + std::to_string(i));
  names.insert(names.end(),
               {"theta1c", "theta2c", "sigma2_1", "sigma2_2", "sigma2_eps"});
  return names;
}

Vector rat_init_state(const RatData& data) {
  Vector st(2 * kRats + 5);
  double stt = 0.0;
  for (int j = 0; j < kTimes; ++j) {
    const double dt = data.t[j] - data.t_bar;
    stt += dt * dt;
  }
  for (int i = 0; i < kRats; ++i) {
    const double ybar = data.y.row(i).mean();
    double sty = 0.0;
    for (int j = 0; j < kTimes; ++j)
      sty += (data.t[j] - data.t_bar) * (data.y(i, j) - ybar);
    st[i] = ybar;  // centered regression: intercept = per-animal mean
    st[kRats + i] = sty / stt;
  }
  const double th1c = st.head(kRats).mean();
  const double th2c = st.segment(kRats, kRats).mean();
  st[60] = th1c;
  st[61] = th2c;
  st[62] = (st.head(kRats).array() - th1c).square().sum() / (kRats - 1);
  st[63] = (st.segment(kRats, kRats).array() - th2c).square().sum() / (kRats - 1);
  const Matrix r = rat_residuals(data, st.head(kRats), st.segment(kRats, kRats));
  // Pooled mean squared residual: uniform weights then satisfy every
  // constraint exactly, so the chain starts at the EL maximum.
  st[64] = r.array().square().sum() / kObs;
  return st;
}

namespace {

double rat_log_prior(const Vector& st) {
  const double th1c = st[60], th2c = st[61];
  const double s1 = st[62], s2 = st[63], se = st[64];
  if (!(s1 > 0.0) || !(s2 > 0.0) || !(se > 0.0)) return neg_inf;
  double lp = log_normal_pdf(th1c, 0.0, kCenterPriorVar) +
              log_normal_pdf(th2c, 0.0, kCenterPriorVar) +
              log_inv_gamma_pdf(s1, kVarShape, kVarScale) +
              log_inv_gamma_pdf(s2, kVarShape, kVarScale) +
              log_inv_gamma_pdf(se, kVarShape, kVarScale);
  for (int i = 0; i < kRats; ++i)
    lp += log_normal_pdf(st[i], th1c, s1) +
          log_normal_pdf(st[kRats + i], th2c, s2);
  return lp;
}

}  // namespace

double rat_log_posterior(const RatData& data, const Vector& state) {
  if (state.size() != 2 * kRats + 5)
    throw DimensionError("rat_log_posterior: state must have 65 components");
  const double lp = rat_log_prior(state);
  if (!(lp > neg_inf)) return neg_inf;
  const RatElResult el = rat_solve_full(data, state.head(kRats),
                                        state.segment(kRats, kRats), state[64]);
  return el.feasible ? lp + el.log_el : neg_inf;
}

Trace run_rat_chain(const RatData& data, const RatConfig& config) {
  const Vector init = rat_init_state(data);

  struct Cache {
    double log_el = 0.0;
    Vector lambda;
    bool mcele_valid = false;
    double sigma2_mcele = 0.0;
  };
  auto cache = std::make_shared<Cache>();
  {
    const RatElResult el0 = rat_solve_full(data, init.head(kRats),
                                           init.segment(kRats, kRats), init[64]);
    if (!el0.feasible)
      throw InitInfeasibleError("rat chain: initial state infeasible");
    cache->log_el = el0.log_el;
    cache->lambda = el0.lambda;
  }

  std::vector<MwgBlock> blocks;

  blocks.push_back({"theta1c", false, [](Vector& st, RngStream& rng) {
                      const double prec = kRats / st[62] + 1.0 / kCenterPriorVar;
                      const double mean = st.head(kRats).sum() / st[62] / prec;
                      st[60] = rng.normal(mean, std::sqrt(1.0 / prec));
                      return std::pair<int, int>{1, 1};
                    }});
  blocks.push_back({"theta2c", false, [](Vector& st, RngStream& rng) {
                      const double prec = kRats / st[63] + 1.0 / kCenterPriorVar;
                      const double mean =
                          st.segment(kRats, kRats).sum() / st[63] / prec;
                      st[61] = rng.normal(mean, std::sqrt(1.0 / prec));
                      return std::pair<int, int>{1, 1};
                    }});
  blocks.push_back({"sigma2_1", false, [](Vector& st, RngStream& rng) {
                      const double ss =
                          (st.head(kRats).array() - st[60]).square().sum();
                      st[62] = rng.inv_gamma(kVarShape + kRats / 2.0,
                                             kVarScale + 0.5 * ss);
                      return std::pair<int, int>{1, 1};
                    }});
  blocks.push_back({"sigma2_2", false, [](Vector& st, RngStream& rng) {
                      const double ss =
                          (st.segment(kRats, kRats).array() - st[61]).square().sum();
                      st[63] = rng.inv_gamma(kVarShape + kRats / 2.0,
                                             kVarScale + 0.5 * ss);
                      return std::pair<int, int>{1, 1};
                    }});

  blocks.push_back(
      {"growth_pairs", true, [&data, cache, config](Vector& st, RngStream& rng) {
         int acc = 0;
         Vector th1 = st.head(kRats);
         Vector th2 = st.segment(kRats, kRats);
         for (int i = 0; i < kRats; ++i) {
           const double p1 = th1[i] + config.theta1_walk_sd * rng.normal();
           const double p2 = th2[i] + config.theta2_walk_sd * rng.normal();
           const double old1 = th1[i], old2 = th2[i];
           th1[i] = p1;
           th2[i] = p2;
           const RatElResult el =
               rat_solve_full(data, th1, th2, st[64], &cache->lambda);
           bool take = false;
           if (el.feasible) {
             const double dprior =
                 log_normal_pdf(p1, st[60], st[62]) -
                 log_normal_pdf(old1, st[60], st[62]) +
                 log_normal_pdf(p2, st[61], st[63]) -
                 log_normal_pdf(old2, st[61], st[63]);
             take = std::log(rng.uniform()) < el.log_el - cache->log_el + dprior;
           }
           if (take) {
             cache->log_el = el.log_el;
             cache->lambda = el.lambda;
             cache->mcele_valid = false;
             ++acc;
           } else {
             th1[i] = old1;
             th2[i] = old2;
           }
         }
         st.head(kRats) = th1;
         st.segment(kRats, kRats) = th2;
         return std::pair<int, int>{acc, kRats};
       }});

  blocks.push_back(
      {"sigma2_eps", true, [&data, cache, config](Vector& st, RngStream& rng) {
         if (!cache->mcele_valid) {
           const RatTrialResult trial =
               rat_solve_trial(data, st.head(kRats), st.segment(kRats, kRats));
           if (!trial.feasible)
             throw NonFiniteError("rat chain: trial problem lost feasibility");
           cache->sigma2_mcele = trial.sigma2_mcele;
           cache->mcele_valid = true;
         }
         const double center = cache->sigma2_mcele;
         const double sd = config.sigma2_eps_walk_sd;
         const double prop = rng.trunc_normal_lower(center, sd, 0.0);
         const RatElResult el = rat_solve_full(
             data, st.head(kRats), st.segment(kRats, kRats), prop, &cache->lambda);
         int acc = 0;
         if (el.feasible) {
           // theta is unchanged, so forward and reverse proposals share the
           // same center and only the prior and EL terms move.
           const double lr =
               el.log_el - cache->log_el +
               log_inv_gamma_pdf(prop, kVarShape, kVarScale) -
               log_inv_gamma_pdf(st[64], kVarShape, kVarScale) +
               log_trunc_normal_lower_pdf(st[64], center, sd, 0.0) -
               log_trunc_normal_lower_pdf(prop, center, sd, 0.0);
           if (std::log(rng.uniform()) < lr) {
             st[64] = prop;
             cache->log_el = el.log_el;
             cache->lambda = el.lambda;
             acc = 1;
           }
         }
         return std::pair<int, int>{acc, 1};
       }});

  const auto record_log_post = [cache](const Vector& st) {
    return cache->log_el + rat_log_prior(st);
  };

  return metropolis_within_gibbs(blocks, rat_param_names(), init,
                                 record_log_post, config.length, config.seed,
                                 config.burn_in, config.stream_id);
}

}  // namespace bayesel

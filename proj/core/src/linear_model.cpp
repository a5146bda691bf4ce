#include "bayesel/linear_model.hpp"

#include <cmath>

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

namespace {

Vector residuals(const RegressionData& data, const GammaMask& gamma,
                 const Vector& beta) {
  const std::vector<int> idx = included_indices(gamma);
  if (beta.size() != static_cast<Eigen::Index>(idx.size()))
    throw DimensionError("linear model: beta size does not match gamma");
  Vector r = data.y;
  for (std::size_t a = 0; a < idx.size(); ++a)
    r -= beta[static_cast<Eigen::Index>(a)] * data.x.col(idx[a]);
  return r;
}

Matrix selected_columns(const RegressionData& data, const GammaMask& gamma) {
  const std::vector<int> idx = included_indices(gamma);
  Matrix xg(data.n(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t a = 0; a < idx.size(); ++a)
    xg.col(static_cast<Eigen::Index>(a)) = data.x.col(idx[a]);
  return xg;
}

}  // namespace

RegressionData standardize(const RegressionData& data) {
  const double n = static_cast<double>(data.n());
  if (n < 2) throw DimensionError("standardize: need at least two rows");
  auto scale = [&](const Vector& v) {
    const double mean = v.mean();
    const double sd = std::sqrt((v.array() - mean).square().sum() / (n - 1.0));
    if (!(sd > 0.0)) throw DimensionError("standardize: constant column");
    return Vector(((v.array() - mean) / sd).matrix());
  };
  RegressionData out;
  out.y = scale(data.y);
  out.x.resize(data.x.rows(), data.x.cols());
  for (Eigen::Index j = 0; j < data.x.cols(); ++j)
    out.x.col(j) = scale(data.x.col(j));
  out.standardized = true;
  return out;
}

std::vector<int> included_indices(const GammaMask& gamma) {
  std::vector<int> idx;
  for (std::size_t j = 0; j < gamma.size(); ++j)
    if (gamma[j]) idx.push_back(static_cast<int>(j));
  return idx;
}

int model_size(const GammaMask& gamma) {
  int k = 0;
  for (const auto g : gamma) k += g ? 1 : 0;
  return k;
}

std::string gamma_bits(const GammaMask& gamma) {
  std::string s(gamma.size(), '0');
  for (std::size_t j = 0; j < gamma.size(); ++j)
    if (gamma[j]) s[j] = '1';
  return s;
}

ConstraintMatrix build_ms_constraints(const RegressionData& data, const GammaMask& gamma,
                                      const Vector& beta, double sigma2) {
  const Vector r = residuals(data, gamma, beta);
  const int s = data.s();
  ConstraintMatrix C(data.n(), s + 2);
  C.col(0) = r;
  C.middleCols(1, s) = data.x.array().colwise() * r.array();
  C.col(s + 1) = (r.array().square() - sigma2).matrix();
  return C;
}

Vector ols(const RegressionData& data, const GammaMask& gamma) {
  if (model_size(gamma) == 0) return Vector(0);
  const Matrix xg = selected_columns(data, gamma);
  return xg.completeOrthogonalDecomposition().solve(data.y);
}

MceleSigma2Result mcele_sigma2(const RegressionData& data, const GammaMask& gamma,
                               const Vector& beta, const SolverOptions& opts) {
  const Vector r = residuals(data, gamma, beta);
  const int s = data.s();
  ConstraintMatrix G(data.n(), s + 1);
  G.col(0) = r;
  G.middleCols(1, s) = data.x.array().colwise() * r.array();

  MceleSigma2Result res;
  const ELSolution sol = solve_el(G, opts);
  if (!sol.feasible) return res;
  res.feasible = true;
  res.nu = sol.weights;
  res.trial_log_el = sol.log_el;
  res.sigma2 = (sol.weights.array() * r.array().square()).sum();
  return res;
}

namespace {

// Both directions share the anchor-difference form; `add` distinguishes a model
// gaining coordinate j from one losing it.
MapResult map_between(const RegressionData& data, const GammaMask& gamma_from, int j,
                      bool add, const Vector& beta_from, double sigma2_from,
                      double sigma2_mcele_from, double u_in,
                      const Vector& beta_hat_from, const Vector& beta_hat_to,
                      const SolverOptions& opts) {
  const int s = static_cast<int>(gamma_from.size());
  if (j < 0 || j >= s) throw DimensionError("map: covariate index out of range");
  if (add == static_cast<bool>(gamma_from[static_cast<std::size_t>(j)]))
    throw DimensionError("map: direction inconsistent with gamma");

  GammaMask gamma_to = gamma_from;
  gamma_to[static_cast<std::size_t>(j)] = add ? 1 : 0;
  const std::vector<int> idx_from = included_indices(gamma_from);
  const std::vector<int> idx_to = included_indices(gamma_to);

  MapResult res;
  Vector beta_to(static_cast<Eigen::Index>(idx_to.size()));
  // Shared coordinates translate by the anchor difference; the fresh one sits
  // at its own anchor plus the innovation.
  std::size_t a_from = 0;
  for (std::size_t a_to = 0; a_to < idx_to.size(); ++a_to) {
    if (add && idx_to[a_to] == j) {
      beta_to[static_cast<Eigen::Index>(a_to)] =
          u_in + beta_hat_to[static_cast<Eigen::Index>(a_to)];
      continue;
    }
    while (idx_from[a_from] != idx_to[a_to]) ++a_from;
    beta_to[static_cast<Eigen::Index>(a_to)] =
        beta_from[static_cast<Eigen::Index>(a_from)] +
        (beta_hat_to[static_cast<Eigen::Index>(a_to)] -
         beta_hat_from[static_cast<Eigen::Index>(a_from)]);
    ++a_from;
  }
  if (!add) {
    // The dropped coordinate's offset from its anchor is the innovation the
    // reverse birth would have drawn.
    for (std::size_t a = 0; a < idx_from.size(); ++a) {
      if (idx_from[a] == j) {
        res.u = beta_from[static_cast<Eigen::Index>(a)] -
                beta_hat_from[static_cast<Eigen::Index>(a)];
        break;
      }
    }
  } else {
    res.u = u_in;
  }

  const MceleSigma2Result m = mcele_sigma2(data, gamma_to, beta_to, opts);
  res.beta = std::move(beta_to);
  if (!m.feasible) return res;
  res.trial_feasible = true;
  res.sigma2_mcele = m.sigma2;
  res.trial_log_el = m.trial_log_el;
  res.sigma2 = sigma2_from + (m.sigma2 - sigma2_mcele_from);
  return res;
}

}  // namespace

MapResult map_up(const RegressionData& data, const GammaMask& gamma_from, int j,
                 const Vector& beta_from, double sigma2_from, double sigma2_mcele_from,
                 double u, const Vector& beta_hat_from, const Vector& beta_hat_to,
                 const SolverOptions& opts) {
  return map_between(data, gamma_from, j, true, beta_from, sigma2_from,
                     sigma2_mcele_from, u, beta_hat_from, beta_hat_to, opts);
}

MapResult map_down(const RegressionData& data, const GammaMask& gamma_from, int j,
                   const Vector& beta_from, double sigma2_from, double sigma2_mcele_from,
                   const Vector& beta_hat_from, const Vector& beta_hat_to,
                   const SolverOptions& opts) {
  return map_between(data, gamma_from, j, false, beta_from, sigma2_from,
                     sigma2_mcele_from, 0.0, beta_hat_from, beta_hat_to, opts);
}

double log_model_prior_beta_binomial(int k, int s, double a, double b) {
  if (k < 0 || k > s) throw DimensionError("model prior: k out of range");
  return log_beta(a + k, b + s - k) - log_beta(a, b);
}

double gibbs_lambda(RngStream& rng, const Vector& beta, double a0, double b0) {
  return rng.inv_gamma(a0 + static_cast<double>(beta.size()),
                       b0 + beta.array().abs().sum());
}

}  // namespace bayesel

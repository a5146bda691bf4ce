#include "bayesel/models/normal_toy.hpp"

#include <cmath>

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"
#include "bayesel/rng.hpp"

namespace bayesel {

ElModel make_normal_toy(const Vector& x) {
  if (x.size() < 3) throw DimensionError("normal toy: need at least 3 observations");
  ElModel m;
  m.data = x;
  m.theta1_dim = 1;
  m.theta2_dim = 1;
  m.g_dim = 1;
  m.h_dim = 1;
  m.g_eval = [](const Eigen::Ref<const Eigen::RowVectorXd>& row,
                const Vector& theta1, Eigen::Ref<Vector> out) {
    out[0] = row[0] - theta1[0];
  };
  m.h_eval = [](const Eigen::Ref<const Eigen::RowVectorXd>& row,
                const Vector& theta1, const Vector& theta2,
                Eigen::Ref<Vector> out) {
    const double r = row[0] - theta1[0];
    out[0] = r * r - theta2[0];
  };
  m.log_prior = [](const Vector& theta1, const Vector& theta2) {
    if (!(theta2[0] > 0.0)) return neg_inf;
    return log_normal_pdf(theta1[0], 0.0, 100.0) +
           log_inv_gamma_pdf(theta2[0], 0.001, 0.001);
  };
  m.theta2_closed_form = [](const Matrix& data, const Vector& theta1,
                            const Vector& nu) {
    Vector theta2(1);
    theta2[0] = (data.col(0).array() - theta1[0]).square().matrix().dot(nu);
    return theta2;
  };
  return m;
}

Vector normal_toy_data(std::uint64_t seed, int n, double mu, double sigma) {
  if (n < 1) throw DimensionError("normal_toy_data: n < 1");
  RngStream rng(seed);
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = rng.normal(mu, sigma);
  return x;
}

GridSpec toy_grid_box(const Vector& x, int n1, int n2) {
  if (n1 < 1 || n2 < 1) throw DimensionError("toy_grid_box: empty grid");
  GridSpec spec;
  spec.t1_lo = x.minCoeff();
  spec.t1_hi = x.maxCoeff();
  const double range = spec.t1_hi - spec.t1_lo;
  if (!(range > 0.0)) throw DimensionError("toy_grid_box: constant sample");
  spec.t2_lo = 0.0;
  spec.t2_hi = range * range;
  spec.n1 = n1;
  spec.n2 = n2;
  return spec;
}

Matrix toy_grid_log_post(const ElModel& model, const GridSpec& spec) {
  Matrix lp(spec.n1, spec.n2);
  const double h1 = (spec.t1_hi - spec.t1_lo) / spec.n1;
  const double h2 = (spec.t2_hi - spec.t2_lo) / spec.n2;
  ThetaSplit theta;
  theta.theta1 = Vector(1);
  theta.theta2 = Vector(1);
  for (int i = 0; i < spec.n1; ++i) {
    theta.theta1[0] = spec.t1_lo + (i + 0.5) * h1;
    for (int j = 0; j < spec.n2; ++j) {
      theta.theta2[0] = spec.t2_lo + (j + 0.5) * h2;
      lp(i, j) = log_posterior_unnorm(model, theta);
    }
  }
  return lp;
}

Matrix normalize_grid(const Matrix& log_post) {
  double mx = neg_inf;
  for (Eigen::Index i = 0; i < log_post.rows(); ++i)
    for (Eigen::Index j = 0; j < log_post.cols(); ++j)
      mx = std::max(mx, log_post(i, j));
  if (!(mx > neg_inf)) throw DimensionError("normalize_grid: no feasible cell");
  Matrix mass = (log_post.array() - mx).exp();
  return mass / mass.sum();
}

}  // namespace bayesel

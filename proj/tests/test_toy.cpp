#include <doctest.h>

#include <cmath>

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"
#include "bayesel/models/normal_toy.hpp"

using namespace bayesel;

TEST_SUITE("toy") {

TEST_CASE("generator is deterministic and shaped") {
  const Vector a = normal_toy_data(3, 10, 1.0, 2.0);
  const Vector b = normal_toy_data(3, 10, 1.0, 2.0);
  REQUIRE(a.size() == 10);
  CHECK((a - b).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((a - normal_toy_data(4, 10, 1.0, 2.0)).lpNorm<Eigen::Infinity>() > 0.0);
}

TEST_CASE("model pieces evaluate the documented equations") {
  const Vector x = normal_toy_data(5, 8, 0.0, 1.0);
  const ElModel m = make_normal_toy(x);
  CHECK(m.theta1_dim == 1);
  CHECK(m.theta2_dim == 1);
  CHECK(m.g_dim == 1);
  CHECK(m.h_dim == 1);
  CHECK(m.n() == 8);

  Vector g(1), h(1);
  const Vector t1 = Vector::Constant(1, 0.3);
  const Vector t2 = Vector::Constant(1, 1.4);
  m.g_eval(m.data.row(2), t1, g);
  CHECK(g[0] == doctest::Approx(x[2] - 0.3).epsilon(1e-15));
  m.h_eval(m.data.row(2), t1, t2, h);
  CHECK(h[0] == doctest::Approx((x[2] - 0.3) * (x[2] - 0.3) - 1.4).epsilon(1e-15));

  // Prior: normal on the mean, inverse gamma on the variance, zero mass at
  // nonpositive variance.
  const double lp = m.log_prior(t1, t2);
  CHECK(lp == doctest::Approx(log_normal_pdf(0.3, 0.0, 100.0) +
                              log_inv_gamma_pdf(1.4, 0.001, 0.001))
                  .epsilon(1e-12));
  CHECK(m.log_prior(t1, Vector::Constant(1, 0.0)) == neg_inf);
  CHECK(m.log_prior(t1, Vector::Constant(1, -2.0)) == neg_inf);

  REQUIRE(static_cast<bool>(m.theta2_closed_form));
  CHECK_THROWS_AS(make_normal_toy(Vector::Zero(2)), DimensionError);
}

TEST_CASE("posterior composes prior and el") {
  const Vector x = normal_toy_data(6, 12, 0.0, 1.0);
  const ElModel m = make_normal_toy(x);
  ThetaSplit theta{Vector::Constant(1, x.mean()),
                   Vector::Constant(1, (x.array() - x.mean()).square().mean())};
  const double lp = log_posterior_unnorm(m, theta);
  const ELSolution sol = solve_el(build_constraints(m, theta));
  REQUIRE(sol.feasible);
  CHECK(lp == doctest::Approx(m.log_prior(theta.theta1, theta.theta2) + sol.log_el)
                  .epsilon(1e-12));
  // Outside the hull the posterior vanishes.
  ThetaSplit outside{Vector::Constant(1, x.maxCoeff() + 1.0), theta.theta2};
  CHECK(log_posterior_unnorm(m, outside) == neg_inf);
}

TEST_CASE("grid box covers the feasible region and flags bad input") {
  const Vector x = normal_toy_data(7, 10, 0.0, 1.0);
  const GridSpec spec = toy_grid_box(x, 50, 40);
  CHECK(spec.n1 == 50);
  CHECK(spec.n2 == 40);
  CHECK(spec.t1_lo == x.minCoeff());
  CHECK(spec.t1_hi == x.maxCoeff());
  CHECK(spec.t2_lo == 0.0);
  const double range = x.maxCoeff() - x.minCoeff();
  CHECK(spec.t2_hi == doctest::Approx(range * range).epsilon(1e-12));
  CHECK_THROWS_AS(toy_grid_box(Vector::Constant(5, 1.0), 10, 10), DimensionError);
}

TEST_CASE("grid log posterior marks infeasible cells and peaks sanely") {
  const Vector x = normal_toy_data(8, 10, 0.0, 1.0);
  const ElModel m = make_normal_toy(x);
  const GridSpec spec = toy_grid_box(x, 60, 60);
  const Matrix lp = toy_grid_log_post(m, spec);
  REQUIRE(lp.rows() == 60);
  REQUIRE(lp.cols() == 60);

  // A cell whose variance falls outside the hull of the squared deviations at
  // its own location cannot satisfy the second-moment constraint.
  const double h1c = (spec.t1_hi - spec.t1_lo) / spec.n1;
  const double h2c = (spec.t2_hi - spec.t2_lo) / spec.n2;
  int hull_checked = 0;
  for (int i = 0; i < 60; ++i) {
    const double t1 = spec.t1_lo + (i + 0.5) * h1c;
    const auto sq = (x.array() - t1).square();
    for (int j = 0; j < 60; ++j) {
      const double t2 = spec.t2_lo + (j + 0.5) * h2c;
      if (t2 <= sq.minCoeff() || t2 >= sq.maxCoeff()) {
        CHECK(lp(i, j) == neg_inf);
        ++hull_checked;
      }
    }
  }
  CHECK(hull_checked > 100);  // the box must actually contain such cells

  int bi = 0, bj = 0;
  double best = neg_inf;
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 60; ++j)
      if (lp(i, j) > best) {
        best = lp(i, j);
        bi = i;
        bj = j;
      }
  REQUIRE(best > neg_inf);
  const double h1 = (spec.t1_hi - spec.t1_lo) / spec.n1;
  const double h2 = (spec.t2_hi - spec.t2_lo) / spec.n2;
  const double mu_star = spec.t1_lo + (bi + 0.5) * h1;
  const double s2_star = spec.t2_lo + (bj + 0.5) * h2;
  // The peak sits near the sample moments.
  CHECK(std::abs(mu_star - x.mean()) < 3.0 * h1);
  CHECK(std::abs(s2_star - (x.array() - x.mean()).square().mean()) < 3.0 * h2);

  // Cell centers are evaluated exactly.
  ThetaSplit at{Vector::Constant(1, mu_star), Vector::Constant(1, s2_star)};
  CHECK(lp(bi, bj) == doctest::Approx(log_posterior_unnorm(m, at)).epsilon(1e-12));
}

TEST_CASE("grid normalization is a shift-invariant distribution") {
  const Vector x = normal_toy_data(9, 10, 0.0, 1.0);
  const ElModel m = make_normal_toy(x);
  const GridSpec spec = toy_grid_box(x, 30, 30);
  const Matrix lp = toy_grid_log_post(m, spec);
  const Matrix mass = normalize_grid(lp);
  CHECK(std::abs(mass.sum() - 1.0) < 1e-12);
  CHECK(mass.minCoeff() >= 0.0);
  const Matrix shifted = normalize_grid(
      (lp.array() > neg_inf).select(lp.array() + 123.0, lp.array()).matrix());
  CHECK((mass - shifted).lpNorm<Eigen::Infinity>() < 1e-12);

  Matrix dead = Matrix::Constant(3, 3, neg_inf);
  CHECK_THROWS_AS(normalize_grid(dead), DimensionError);
}

}  // TEST_SUITE

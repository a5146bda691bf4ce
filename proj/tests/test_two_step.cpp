#include <doctest.h>

#include <cmath>
#include <memory>

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"
#include "bayesel/models/normal_toy.hpp"
#include "bayesel/two_step_mh.hpp"

using namespace bayesel;

namespace {

struct ToySetup {
  Vector x;
  ElModel model;
  ThetaSplit init;
  Proposal1 q1;
  Proposal2 q2;
};

ToySetup toy_setup(std::uint64_t seed) {
  ToySetup s;
  s.x = normal_toy_data(seed, 10, 0.0, 1.0);
  s.model = make_normal_toy(s.x);
  s.init.theta1 = Vector::Constant(1, s.x.mean());
  s.init.theta2 =
      Vector::Constant(1, (s.x.array() - s.x.mean()).square().sum() / s.x.size());
  s.q1.scales = Vector::Constant(1, 0.5);
  s.q2.kind = Proposal2Kind::TruncatedNormalAtMcele;
  s.q2.scales = Vector::Constant(1, 0.6);
  s.q2.lower_bounds = Vector::Constant(1, 0.0);
  return s;
}

}  // namespace

TEST_SUITE("two_step") {

TEST_CASE("trace bookkeeping is consistent") {
  const ToySetup s = toy_setup(31);
  const Trace tr = two_step_mh(s.model, s.init, s.q1, s.q2, 400, 5, 100);
  REQUIRE(tr.states.rows() == 400);
  REQUIRE(tr.states.cols() == 2);
  CHECK(tr.p == 1);
  CHECK(tr.q == 1);
  CHECK(tr.seed == 5);
  CHECK(tr.burn_in == 100);
  CHECK(tr.names == std::vector<std::string>{"theta1_1", "theta2_1"});
  CHECK(tr.abort_reason.empty());
  REQUIRE(tr.move_counts.size() == 1);
  CHECK(tr.move_counts[0].proposed == 400);

  long flagged = 0;
  for (int t = 1; t < 400; ++t) {
    const bool moved = (tr.states.row(t) - tr.states.row(t - 1)).norm() > 0.0;
    // A rejection repeats the previous row bit for bit.
    if (!tr.accepted[t]) CHECK_FALSE(moved);
    flagged += tr.accepted[t];
  }
  CHECK(flagged + (tr.accepted[0] ? 1 : 0) == tr.move_counts[0].accepted);
  CHECK(tr.move_counts[0].accepted > 0);
  CHECK(tr.move_counts[0].accepted < 400);
}

TEST_CASE("recorded log posteriors and trial maximizers are recomputable") {
  const ToySetup s = toy_setup(32);
  const Trace tr = two_step_mh(s.model, s.init, s.q1, s.q2, 60, 6);
  for (int t = 0; t < 60; t += 7) {
    ThetaSplit th{tr.states.row(t).head(1).transpose(),
                  tr.states.row(t).tail(1).transpose()};
    CHECK(std::abs(tr.log_posts[t] - log_posterior_unnorm(s.model, th)) < 1e-10);
    const MceleResult m = mcele(s.model, th.theta1);
    REQUIRE(m.feasible);
    CHECK(std::abs(tr.mcele_values(t, 0) - m.theta2_hat[0]) < 1e-10);
  }
}

TEST_CASE("second stage is centered at the proposal's own trial maximizer") {
  const ToySetup s = toy_setup(33);
  std::vector<StepInfo> log;
  two_step_mh(s.model, s.init, s.q1, s.q2, 50, 7, 0,
              [&](const StepInfo& info) { log.push_back(info); });
  REQUIRE(log.size() == 50);
  int feasible = 0;
  for (const auto& info : log) {
    if (!info.trial_feasible) continue;
    ++feasible;
    const MceleResult m = mcele(s.model, info.theta1_proposed);
    REQUIRE(m.feasible);
    CHECK(std::abs(info.q2_center[0] - m.theta2_hat[0]) < 1e-12);
  }
  CHECK(feasible > 10);
}

TEST_CASE("log acceptance ratio is antisymmetric") {
  const ToySetup s = toy_setup(34);
  StateCache a, b;
  a.theta = s.init;
  a.log_post = log_posterior_unnorm(s.model, a.theta);
  a.mcele_theta2 = mcele(s.model, a.theta.theta1).theta2_hat;
  b.theta.theta1 = Vector::Constant(1, s.init.theta1[0] + 0.2);
  b.theta.theta2 = Vector::Constant(1, s.init.theta2[0] * 0.8);
  b.log_post = log_posterior_unnorm(s.model, b.theta);
  b.mcele_theta2 = mcele(s.model, b.theta.theta1).theta2_hat;
  REQUIRE(a.log_post > neg_inf);
  REQUIRE(b.log_post > neg_inf);
  const double fwd = log_acceptance_ratio(a, b, s.q1, s.q2);
  const double rev = log_acceptance_ratio(b, a, s.q1, s.q2);
  CHECK(std::abs(fwd + rev) < 1e-10);
  CHECK(acceptance_ratio(a, b, s.q1, s.q2) == doctest::Approx(std::exp(std::min(0.0, fwd))));
  // Zero-mass proposals are never accepted.
  StateCache dead = b;
  dead.log_post = neg_inf;
  CHECK(log_acceptance_ratio(a, dead, s.q1, s.q2) == neg_inf);
  CHECK(acceptance_ratio(a, dead, s.q1, s.q2) == 0.0);
}

TEST_CASE("chains are deterministic in the seed") {
  const ToySetup s = toy_setup(35);
  const Trace a = two_step_mh(s.model, s.init, s.q1, s.q2, 200, 9);
  const Trace b = two_step_mh(s.model, s.init, s.q1, s.q2, 200, 9);
  const Trace c = two_step_mh(s.model, s.init, s.q1, s.q2, 200, 10);
  CHECK((a.states - b.states).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((a.log_posts - b.log_posts).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK(a.accepted == b.accepted);
  CHECK((a.states - c.states).lpNorm<Eigen::Infinity>() > 0.0);
}

TEST_CASE("infeasible initialization throws") {
  const ToySetup s = toy_setup(36);
  ThetaSplit bad = s.init;
  bad.theta1[0] = s.x.maxCoeff() + 2.0;  // outside the data hull
  CHECK_THROWS_AS(two_step_mh(s.model, bad, s.q1, s.q2, 100, 1),
                  InitInfeasibleError);
  ThetaSplit negative = s.init;
  negative.theta2[0] = -1.0;  // zero prior mass
  CHECK_THROWS_AS(two_step_mh(s.model, negative, s.q1, s.q2, 100, 1),
                  InitInfeasibleError);
}

TEST_CASE("argument validation") {
  const ToySetup s = toy_setup(37);
  CHECK_THROWS_AS(two_step_mh(s.model, s.init, s.q1, s.q2, 0, 1), DimensionError);
  CHECK_THROWS_AS(two_step_mh(s.model, s.init, s.q1, s.q2, 10, 1, 10),
                  DimensionError);
  ThetaSplit wrong;
  wrong.theta1 = Vector::Zero(2);
  wrong.theta2 = Vector::Zero(1);
  CHECK_THROWS_AS(two_step_mh(s.model, wrong, s.q1, s.q2, 10, 1), DimensionError);
}

TEST_CASE("numeric errors abort with a partial trace") {
  ToySetup s = toy_setup(38);
  auto calls = std::make_shared<int>(0);
  const auto inner = s.model.h_eval;
  s.model.h_eval = [calls, inner](const Eigen::Ref<const Eigen::RowVectorXd>& row,
                                  const Vector& t1, const Vector& t2,
                                  Eigen::Ref<Vector> out) {
    if (++*calls > 400) throw NonFiniteError("synthetic failure");
    inner(row, t1, t2, out);
  };
  const Trace tr = two_step_mh(s.model, s.init, s.q1, s.q2, 500, 11);
  CHECK_FALSE(tr.abort_reason.empty());
  CHECK(tr.states.rows() < 500);
  CHECK(tr.log_posts.size() == tr.states.rows());
  CHECK(static_cast<Eigen::Index>(tr.accepted.size()) == tr.states.rows());
}

}  // TEST_SUITE

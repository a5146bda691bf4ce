#include "bayesel/two_step_mh.hpp"

#include <cmath>

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

double log_acceptance_ratio(const StateCache& curr, const StateCache& prop,
                            const Proposal1& q1, const Proposal2& q2) {
  if (!(prop.log_post > neg_inf)) return neg_inf;
  const double forward = log_q2(q2, prop.theta.theta2, prop.mcele_theta2) +
                         log_q1(q1, prop.theta.theta1, curr.theta.theta1);
  const double reverse = log_q2(q2, curr.theta.theta2, curr.mcele_theta2) +
                         log_q1(q1, curr.theta.theta1, prop.theta.theta1);
  return prop.log_post + reverse - curr.log_post - forward;
}

double acceptance_ratio(const StateCache& curr, const StateCache& prop,
                        const Proposal1& q1, const Proposal2& q2) {
  const double lr = log_acceptance_ratio(curr, prop, q1, q2);
  return std::exp(std::min(0.0, lr));
}

Trace two_step_mh(const ElModel& model, const ThetaSplit& init,
                  const Proposal1& q1, const Proposal2& q2, int length,
                  std::uint64_t seed, int burn_in, const StepObserver& observer) {
  const int p = model.theta1_dim;
  const int q = model.theta2_dim;
  if (init.theta1.size() != p || init.theta2.size() != q)
    throw DimensionError("two_step_mh: init size mismatch");
  if (length < 1) throw DimensionError("two_step_mh: length must be positive");
  if (burn_in < 0 || burn_in >= length)
    throw DimensionError("two_step_mh: burn_in out of range");

  StateCache curr;
  curr.theta = init;
  curr.log_post = log_posterior_unnorm(model, init);
  if (!(curr.log_post > neg_inf))
    throw InitInfeasibleError("two_step_mh: initial state has zero posterior mass");
  const MceleResult m0 = mcele(model, init.theta1);
  if (!m0.feasible)
    throw InitInfeasibleError("two_step_mh: initial trial problem infeasible");
  curr.mcele_theta2 = m0.theta2_hat;
  if (!(log_q2(q2, curr.theta.theta2, curr.mcele_theta2) > neg_inf))
    throw InitInfeasibleError("two_step_mh: initial theta2 outside proposal support");

  Trace trace;
  trace.p = p;
  trace.q = q;
  for (int j = 0; j < p; ++j) trace.names.push_back("theta1_" + std::to_string(j + 1));
  for (int j = 0; j < q; ++j) trace.names.push_back("theta2_" + std::to_string(j + 1));
  trace.states.resize(length, p + q);
  trace.log_posts.resize(length);
  trace.accepted.assign(length, 0);
  trace.mcele_values.resize(length, q);
  trace.seed = seed;
  trace.burn_in = burn_in;

  RngStream rng(seed, 0);
  MoveCount moves{"two-step", 0, 0};
  int t = 0;
  try {
    for (; t < length; ++t) {
      StepInfo info;
      info.iteration = t + 1;
      bool accepted = false;

      const Vector theta1_prop = sample_q1(q1, curr.theta.theta1, rng);
      info.theta1_proposed = theta1_prop;
      ++moves.proposed;

      const MceleResult mp = mcele(model, theta1_prop);
      info.trial_feasible = mp.feasible;
      if (mp.feasible) {
        // Second stage only exists on a feasible trial problem; an infeasible
        // one repeats the current state and counts as a rejection.
        info.q2_center = mp.theta2_hat;
        StateCache prop;
        prop.theta.theta1 = theta1_prop;
        prop.theta.theta2 = sample_q2(q2, mp.theta2_hat, rng);
        prop.mcele_theta2 = mp.theta2_hat;
        prop.log_post = log_posterior_unnorm(model, prop.theta);
        if (prop.log_post > neg_inf) {
          const double lr = log_acceptance_ratio(curr, prop, q1, q2);
          if (std::log(rng.uniform()) < lr) {
            curr = std::move(prop);
            accepted = true;
          }
        }
      }

      if (accepted) ++moves.accepted;
      trace.states.row(t).head(p) = curr.theta.theta1.transpose();
      trace.states.row(t).tail(q) = curr.theta.theta2.transpose();
      trace.log_posts[t] = curr.log_post;
      trace.accepted[t] = accepted ? 1 : 0;
      trace.mcele_values.row(t) = curr.mcele_theta2.transpose();

      if (observer) {
        info.accepted = accepted;
        observer(info);
      }
    }
  } catch (const Error& e) {
    trace.abort_reason = e.what();
    trace.states.conservativeResize(t, Eigen::NoChange);
    trace.log_posts.conservativeResize(t);
    trace.accepted.resize(t);
    trace.mcele_values.conservativeResize(t, Eigen::NoChange);
  }
  trace.move_counts.push_back(moves);
  return trace;
}

}  // namespace bayesel

#ifndef BAYESEL_TWO_STEP_MH_HPP
#define BAYESEL_TWO_STEP_MH_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "bayesel/mcele.hpp"
#include "bayesel/model.hpp"
#include "bayesel/proposals.hpp"

namespace bayesel {

struct MoveCount {
  std::string label;
  long accepted = 0;
  long proposed = 0;
};

// Row t holds the chain state after iteration t+1; a rejected iteration
// repeats the previous row bit for bit.
struct Trace {
  int p = 0;  // theta1 dimension
  int q = 0;  // theta2 dimension
  std::vector<std::string> names;
  Matrix states;                       // length x names.size()
  Vector log_posts;                    // length
  std::vector<std::uint8_t> accepted;  // per-iteration accept count
  Matrix mcele_values;                 // length x q; trial maximizer of the recorded state
  std::uint64_t seed = 0;
  int burn_in = 0;
  std::vector<MoveCount> move_counts;
  std::string abort_reason;  // nonempty when a numeric error cut the run short
};

// Cached per-state quantities entering the acceptance ratio. mcele_theta2 is
// the trial maximizer at the state's theta1, fixed when the state was accepted.
struct StateCache {
  ThetaSplit theta;
  double log_post = 0.0;
  Vector mcele_theta2;
};

// Log ratio of the two-step move: posterior ratio times the reverse-over-forward
// proposal densities, where each q2 factor is evaluated at that state's own
// trial maximizer. Returns -inf when the proposal has zero posterior mass.
double log_acceptance_ratio(const StateCache& curr, const StateCache& prop,
                            const Proposal1& q1, const Proposal2& q2);

// min(1, exp(log ratio)).
double acceptance_ratio(const StateCache& curr, const StateCache& prop,
                        const Proposal1& q1, const Proposal2& q2);

// Observer for kernel audits; called once per iteration with the inputs the
// second stage actually consumed.
struct StepInfo {
  int iteration = 0;
  Vector theta1_proposed;
  bool trial_feasible = false;
  Vector q2_center;  // trial maximizer handed to the q2 sampler
  bool accepted = false;
};
using StepObserver = std::function<void(const StepInfo&)>;

Trace two_step_mh(const ElModel& model, const ThetaSplit& init,
                  const Proposal1& q1, const Proposal2& q2, int length,
                  std::uint64_t seed, int burn_in = 0,
                  const StepObserver& observer = nullptr);

}  // namespace bayesel

#endif

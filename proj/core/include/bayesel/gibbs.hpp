#ifndef BAYESEL_GIBBS_HPP
#define BAYESEL_GIBBS_HPP

#include "bayesel/two_step_mh.hpp"

namespace bayesel {

// One sweep component: either a conjugate Gibbs draw (always accepted) or an
// embedded Metropolis move. update mutates the shared state in place and
// returns {accepted, proposed}; Gibbs blocks return {1, 1}.
struct MwgBlock {
  std::string name;
  bool is_metropolis = false;
  std::function<std::pair<int, int>(Vector& state, RngStream& rng)> update;
};

// Scans the blocks in order once per iteration and records the state after the
// full sweep. log_post is evaluated on the recorded state; the trace's
// accepted column holds the number of accepted Metropolis sub-moves per sweep.
Trace metropolis_within_gibbs(const std::vector<MwgBlock>& blocks,
                              const std::vector<std::string>& names,
                              const Vector& init,
                              const std::function<double(const Vector&)>& log_post,
                              int length, std::uint64_t seed, int burn_in = 0,
                              std::uint64_t stream_id = 0);

}  // namespace bayesel

#endif

#include "bayesel/gibbs.hpp"

#include <algorithm>

#include "bayesel/errors.hpp"

namespace bayesel {

Trace metropolis_within_gibbs(const std::vector<MwgBlock>& blocks,
                              const std::vector<std::string>& names,
                              const Vector& init,
                              const std::function<double(const Vector&)>& log_post,
                              int length, std::uint64_t seed, int burn_in,
                              std::uint64_t stream_id) {
  if (init.size() != static_cast<Eigen::Index>(names.size()))
    throw DimensionError("metropolis_within_gibbs: names/init size mismatch");
  if (length < 1) throw DimensionError("metropolis_within_gibbs: length must be positive");
  if (burn_in < 0 || burn_in >= length)
    throw DimensionError("metropolis_within_gibbs: burn_in out of range");

  Trace trace;
  trace.names = names;
  trace.states.resize(length, init.size());
  trace.log_posts.resize(length);
  trace.accepted.assign(length, 0);
  trace.seed = seed;
  trace.burn_in = burn_in;
  for (const auto& b : blocks) trace.move_counts.push_back({b.name, 0, 0});

  RngStream rng(seed, stream_id);
  Vector state = init;
  int t = 0;
  try {
    for (; t < length; ++t) {
      int sweep_accepts = 0;
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto [acc, prop] = blocks[b].update(state, rng);
        trace.move_counts[b].accepted += acc;
        trace.move_counts[b].proposed += prop;
        if (blocks[b].is_metropolis) sweep_accepts += acc;
      }
      trace.states.row(t) = state.transpose();
      trace.log_posts[t] = log_post(state);
      trace.accepted[t] =
          static_cast<std::uint8_t>(std::min(sweep_accepts, 255));
    }
  } catch (const Error& e) {
    trace.abort_reason = e.what();
    trace.states.conservativeResize(t, Eigen::NoChange);
    trace.log_posts.conservativeResize(t);
    trace.accepted.resize(t);
  }
  return trace;
}

}  // namespace bayesel

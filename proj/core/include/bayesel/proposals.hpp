#ifndef BAYESEL_PROPOSALS_HPP
#define BAYESEL_PROPOSALS_HPP

#include "bayesel/rng.hpp"
#include "bayesel/types.hpp"

namespace bayesel {

// Componentwise Gaussian random walk for the structural block.
struct Proposal1 {
  Vector scales;
};

Vector sample_q1(const Proposal1& q1, const Vector& from, RngStream& rng);
double log_q1(const Proposal1& q1, const Vector& to, const Vector& from);

// Second-stage proposal centered at the trial maximizer, not at the current
// value; the truncated kind renormalizes each coordinate by its upper tail mass.
enum class Proposal2Kind { GaussianAtMcele, TruncatedNormalAtMcele };

struct Proposal2 {
  Proposal2Kind kind = Proposal2Kind::GaussianAtMcele;
  Vector scales;
  Vector lower_bounds;  // required by the truncated kind, same length as scales
};

Vector sample_q2(const Proposal2& q2, const Vector& center, RngStream& rng);
double log_q2(const Proposal2& q2, const Vector& x, const Vector& center);

}  // namespace bayesel

#endif

#include "bayesel/proposals.hpp"

#include "bayesel/distributions.hpp"
#include "bayesel/errors.hpp"

namespace bayesel {

Vector sample_q1(const Proposal1& q1, const Vector& from, RngStream& rng) {
  if (q1.scales.size() != from.size())
    throw DimensionError("q1: scale vector size mismatch");
  Vector out(from.size());
  for (Eigen::Index j = 0; j < from.size(); ++j)
    out[j] = from[j] + q1.scales[j] * rng.normal();
  return out;
}

double log_q1(const Proposal1& q1, const Vector& to, const Vector& from) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < from.size(); ++j)
    s += log_normal_pdf(to[j], from[j], q1.scales[j] * q1.scales[j]);
  return s;
}

Vector sample_q2(const Proposal2& q2, const Vector& center, RngStream& rng) {
  if (q2.scales.size() != center.size())
    throw DimensionError("q2: scale vector size mismatch");
  Vector out(center.size());
  for (Eigen::Index j = 0; j < center.size(); ++j) {
    if (q2.kind == Proposal2Kind::GaussianAtMcele) {
      out[j] = rng.normal(center[j], q2.scales[j]);
    } else {
      out[j] = rng.trunc_normal_lower(center[j], q2.scales[j], q2.lower_bounds[j]);
    }
  }
  return out;
}

double log_q2(const Proposal2& q2, const Vector& x, const Vector& center) {
  if (q2.kind == Proposal2Kind::TruncatedNormalAtMcele &&
      q2.lower_bounds.size() != q2.scales.size())
    throw DimensionError("q2: truncated kind needs lower bounds");
  double s = 0.0;
  for (Eigen::Index j = 0; j < center.size(); ++j) {
    if (q2.kind == Proposal2Kind::GaussianAtMcele) {
      s += log_normal_pdf(x[j], center[j], q2.scales[j] * q2.scales[j]);
    } else {
      s += log_trunc_normal_lower_pdf(x[j], center[j], q2.scales[j],
                                      q2.lower_bounds[j]);
    }
  }
  return s;
}

}  // namespace bayesel

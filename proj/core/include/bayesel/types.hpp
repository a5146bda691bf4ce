#ifndef BAYESEL_TYPES_HPP
#define BAYESEL_TYPES_HPP

#include <Eigen/Dense>

namespace bayesel {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// One row per observation, one column per estimating equation; the empirical
// likelihood constraint is sum_i w_i * C.row(i) = 0 over the probability simplex.
using ConstraintMatrix = Eigen::MatrixXd;

// Parameter split (theta1, theta2): theta1 enters the structural equations g,
// theta2 only the remaining equations h.
struct ThetaSplit {
  Vector theta1;
  Vector theta2;
};

}  // namespace bayesel

#endif

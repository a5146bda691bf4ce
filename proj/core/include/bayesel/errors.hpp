#ifndef BAYESEL_ERRORS_HPP
#define BAYESEL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bayesel {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Constraint matrix shape violations (empty data, m >= n, mismatched blocks).
struct DimensionError : Error {
  using Error::Error;
};

// NaN or infinity in inputs where finite values are required.
struct NonFiniteError : Error {
  using Error::Error;
};

// Root solver exhausted its iteration budget without residual convergence.
struct RootNotFoundError : Error {
  using Error::Error;
};

// Chain initial state has zero posterior mass or an infeasible trial problem.
struct InitInfeasibleError : Error {
  using Error::Error;
};

struct EmptyTraceError : Error {
  using Error::Error;
};

// Series too short for the requested diagnostic.
struct TooShortError : Error {
  using Error::Error;
};

// Malformed CLI configuration or input file.
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace bayesel

#endif

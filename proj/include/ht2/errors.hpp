#ifndef HT2_ERRORS_HPP
#define HT2_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ht2 {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad argument values or malformed configuration.
struct InvalidInput : Error {
  using Error::Error;
};

// Two sample sets disagree on the number of variables.
struct DimensionMismatch : Error {
  using Error::Error;
};

// A matrix required to be SPD has a non-positive pivot.
struct NotPositiveDefinite : Error {
  using Error::Error;
};

// n >= n_x + n_y - 1: the pooled covariance is singular by construction
// and the F transform has no valid degrees of freedom.
struct DegenerateDimension : Error {
  using Error::Error;
};

// The Jacobi eigensolver did not converge within its sweep cap.
struct EigenFailure : Error {
  using Error::Error;
};

}  // namespace ht2

#endif  // HT2_ERRORS_HPP

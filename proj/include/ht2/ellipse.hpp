#ifndef HT2_ELLIPSE_HPP
#define HT2_ELLIPSE_HPP

#include <vector>

namespace ht2 {

// A two-dimensional mean shift (mu_x - mu_y components).
struct ShiftPair {
  double a1 = 0.0;
  double a2 = 0.0;
};

/**
 * The locus of 2-D shifts with the same power as the unit single-marginal
 * shift (1, 0): an ellipse with principal axes along the a1 = a2 and
 * a1 = -a2 diagonals.
 */
struct IsoPowerEllipse {
  double rho;
  double major_radius;    // sqrt(1/(1-rho))
  double minor_radius;    // sqrt(1/(1+rho))
  double rotation_angle;  // pi/4, fixed
};

IsoPowerEllipse iso_power_ellipse(double rho);

// (major, minor) = (sqrt(1/(1-rho)), sqrt(1/(1+rho))).
std::pair<double, double> principal_radii(double rho);

// a1^2 + a2^2 - 2 rho a1 a2 - 1; zero iff the pair lies on the curve.
double iso_power_residual(double rho, const ShiftPair& p);

// Real roots of the iso-power equation in a2 for fixed a1:
//   a2 = rho a1 +- sqrt((rho a1)^2 - (a1^2 - 1)).
// Empty when |a1| exceeds sqrt(1/(1-rho^2)); a single double root at the
// boundary (absolute discriminant tolerance 1e-12); two roots inside,
// returned in ascending order.
std::vector<double> solve_a2(double rho, double a1);

// `count` points on the ellipse, parameterized by angle t uniform on
// [0, 2pi): the principal-axes point (major cos t, minor sin t) rotated by
// +pi/4. Every returned pair satisfies |iso_power_residual| <= 1e-10.
std::vector<ShiftPair> ellipse_points(double rho, int count);

}  // namespace ht2

#endif  // HT2_ELLIPSE_HPP

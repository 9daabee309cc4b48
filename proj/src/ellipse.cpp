#include "ht2/ellipse.hpp"

#include <cmath>
#include <numbers>

#include "ht2/errors.hpp"

namespace ht2 {

namespace {
void check_rho(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) throw InvalidInput("rho must lie in [0, 1)");
}
}  // namespace

IsoPowerEllipse iso_power_ellipse(double rho) {
  check_rho(rho);
  return {rho, std::sqrt(1.0 / (1.0 - rho)), std::sqrt(1.0 / (1.0 + rho)), std::numbers::pi / 4.0};
}

std::pair<double, double> principal_radii(double rho) {
  const IsoPowerEllipse e = iso_power_ellipse(rho);
  return {e.major_radius, e.minor_radius};
}

double iso_power_residual(double rho, const ShiftPair& p) {
  return p.a1 * p.a1 + p.a2 * p.a2 - 2.0 * rho * p.a1 * p.a2 - 1.0;
}

std::vector<double> solve_a2(double rho, double a1) {
  check_rho(rho);
  const double disc = rho * rho * a1 * a1 - (a1 * a1 - 1.0);
  constexpr double boundary_tol = 1e-12;  // discriminant values are O(1) here
  if (disc < -boundary_tol) return {};
  const double mid = rho * a1;
  if (disc <= boundary_tol) return {mid};
  const double r = std::sqrt(disc);
  return {mid - r, mid + r};
}

std::vector<ShiftPair> ellipse_points(double rho, int count) {
  if (count < 4) throw InvalidInput("ellipse_points: count must be >= 4");
  const IsoPowerEllipse e = iso_power_ellipse(rho);
  const double half_sqrt2 = std::numbers::sqrt2 / 2.0;

  std::vector<ShiftPair> pts;
  pts.reserve(count);
  for (int k = 0; k < count; ++k) {
    const double t = 2.0 * std::numbers::pi * k / count;
    const double u = e.major_radius * std::cos(t);
    const double v = e.minor_radius * std::sin(t);
    pts.push_back({half_sqrt2 * (u - v), half_sqrt2 * (u + v)});
  }
  return pts;
}

}  // namespace ht2

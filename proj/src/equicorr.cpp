#include "ht2/equicorr.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ht2/errors.hpp"

namespace ht2 {

EquicorrModel::EquicorrModel(int n, double rho) : n_(n), rho_(rho) {
  if (n < 1) throw InvalidInput("EquicorrModel: n must be >= 1");
  if (!(rho >= 0.0 && rho < 1.0))
    throw InvalidInput("EquicorrModel: rho must lie in [0, 1), got " + std::to_string(rho));
}

SymMatrix EquicorrModel::sigma() const {
  SymMatrix s(n_);
  for (int i = 0; i < n_; ++i) {
    s.set(i, i, 1.0);
    for (int j = i + 1; j < n_; ++j) s.set(i, j, rho_);
  }
  return s;
}

namespace {
double denom(const EquicorrModel& model) {
  return (1.0 - model.rho()) * (1.0 + (model.n() - 1) * model.rho());
}
}  // namespace

InverseCoefficients inverse_coefficients(const EquicorrModel& model) {
  const double d = denom(model);
  return {(1.0 + (model.n() - 2) * model.rho()) / d, model.rho() / d};
}

double t_star_squared(const EquicorrModel& model, const ShiftAlternative& alt) {
  const int n = model.n();
  if (alt.m < 0 || alt.m > n) throw InvalidInput("t_star_squared: m must lie in [0, n]");
  const double m = alt.m;
  // Unit-shift value first, then the a^2 factor: the shift scaling law is
  // exact in floating point.
  const double unit = m * (1.0 + (n - m - 1) * model.rho()) / denom(model);
  return alt.a * alt.a * unit;
}

double increment(const EquicorrModel& model, int m) {
  const int n = model.n();
  if (m < 0 || m >= n) throw InvalidInput("increment: m must lie in [0, n)");
  return (1.0 + (n - 2 * m - 2) * model.rho()) / denom(model);
}

std::optional<double> increment_positive_threshold(int n, int m) {
  if (m < 0 || m >= n) throw InvalidInput("increment_positive_threshold: m must lie in [0, n)");
  const int h = 2 * m + 2 - n;
  if (h <= 0) return std::nullopt;
  return 1.0 / h;
}

double one_vs_all_gap(const EquicorrModel& model) {
  if (model.n() < 2) throw InvalidInput("one_vs_all_gap: n must be >= 2");
  return t_star_squared(model, {1, 1.0}) - t_star_squared(model, {model.n(), 1.0});
}

int argmax_m(const EquicorrModel& model) {
  const int n = model.n();
  if (model.rho() == 0.0) return n;

  const double m_star = (1.0 + (n - 1) * model.rho()) / (2.0 * model.rho());
  const int lo = std::clamp(static_cast<int>(std::floor(m_star)), 1, n);
  const int hi = std::clamp(static_cast<int>(std::ceil(m_star)), 1, n);
  const double at_lo = t_star_squared(model, {lo, 1.0});
  const double at_hi = t_star_squared(model, {hi, 1.0});
  return at_hi > at_lo ? hi : lo;
}

}  // namespace ht2

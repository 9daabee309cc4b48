// Shared test-only helpers. The oracles here deliberately avoid the library
// code paths they are used to check: the F cdf comes from adaptive
// quadrature of the density, and linear solves use plain Gauss-Jordan
// elimination.
#ifndef HT2_TESTS_TEST_UTIL_HPP
#define HT2_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "ht2/rng.hpp"
#include "ht2/sym_matrix.hpp"

namespace ht2::testing {

inline double f_pdf(double t, int d1, int d2) {
  if (t < 0.0) return 0.0;
  const double a = 0.5 * d1;
  const double b = 0.5 * d2;
  const double log_front =
      std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(static_cast<double>(d1) / d2);
  const double log_t_term = (a == 1.0) ? 0.0 : (a - 1.0) * std::log(t);
  if (t == 0.0 && a > 1.0) return 0.0;
  return std::exp(log_front + log_t_term - (a + b) * std::log1p(d1 * t / d2));
}

namespace detail {

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                               double fb, double whole, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0) return left + right;
  if (std::fabs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * eps, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * eps, depth - 1);
}

}  // namespace detail

inline double integrate(const std::function<double(double)>& f, double a, double b, double eps) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::adaptive_simpson(f, a, b, fa, fm, fb, whole, eps, 60);
}

// Quadrature oracle for P(F <= x), absolute accuracy ~1e-12.
inline double f_cdf_oracle(double x, int d1, int d2) {
  if (x <= 0.0) return 0.0;
  return integrate([=](double t) { return f_pdf(t, d1, d2); }, 0.0, x, 1e-12);
}

// Gauss-Jordan solve with partial pivoting; independent of the library's
// Cholesky path.
inline std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> rhs) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
    std::swap(a[col], a[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    if (a[col][col] == 0.0) throw std::runtime_error("gauss_solve: singular matrix");
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double factor = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= factor * a[col][c];
      rhs[r] -= factor * rhs[col];
    }
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = rhs[i] / a[i][i];
  return out;
}

// Well-conditioned random SPD matrix: L L^T with L lower triangular,
// diagonal in [0.5, 1.5], off-diagonal in [-0.5, 0.5].
inline SymMatrix random_spd(int dim, RandomStream& rs) {
  std::vector<std::vector<double>> l(dim, std::vector<double>(dim, 0.0));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < i; ++j) l[i][j] = rs.next_unit() - 0.5;
    l[i][i] = 0.5 + rs.next_unit();
  }
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      double s = 0.0;
      for (int k = 0; k <= std::min(i, j); ++k) s += l[i][k] * l[j][k];
      m.set(i, j, s);
    }
  return m;
}

}  // namespace ht2::testing

#endif  // HT2_TESTS_TEST_UTIL_HPP

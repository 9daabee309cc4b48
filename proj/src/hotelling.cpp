#include "ht2/hotelling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ht2/errors.hpp"
#include "ht2/fdist.hpp"
#include "ht2/parallel.hpp"
#include "ht2/rng.hpp"

namespace ht2 {

SampleSet::SampleSet(int n_obs, int n_vars) : n_obs_(n_obs), n_vars_(n_vars) {
  if (n_obs < 1) throw InvalidInput("SampleSet: n_obs must be >= 1");
  if (n_vars < 1) throw InvalidInput("SampleSet: n_vars must be >= 1");
  data_.assign(static_cast<std::size_t>(n_obs) * n_vars, 0.0);
}

SampleSet SampleSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidInput("SampleSet: no rows");
  const int n_vars = static_cast<int>(rows.front().size());
  SampleSet s(static_cast<int>(rows.size()), n_vars);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (static_cast<int>(rows[i].size()) != n_vars)
      throw InvalidInput("SampleSet: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size()) +
                         " columns, expected " + std::to_string(n_vars));
    for (int j = 0; j < n_vars; ++j) {
      if (!std::isfinite(rows[i][j]))
        throw InvalidInput("SampleSet: non-finite entry at row " + std::to_string(i + 1) + ", column " +
                           std::to_string(j + 1));
      s(static_cast<int>(i), j) = rows[i][j];
    }
  }
  return s;
}

std::vector<double> SampleSet::column_means() const {
  std::vector<double> m(n_vars_, 0.0);
  for (int i = 0; i < n_obs_; ++i)
    for (int j = 0; j < n_vars_; ++j) m[j] += (*this)(i, j);
  for (double& v : m) v /= n_obs_;
  return m;
}

namespace {

std::vector<double> centered_scatter(const SampleSet& s) {
  const int p = s.n_vars();
  const std::vector<double> mean = s.column_means();
  std::vector<double> scatter(static_cast<std::size_t>(p) * p, 0.0);
  std::vector<double> c(p);
  for (int i = 0; i < s.n_obs(); ++i) {
    for (int j = 0; j < p; ++j) c[j] = s(i, j) - mean[j];
    for (int j = 0; j < p; ++j)
      for (int l = j; l < p; ++l) scatter[static_cast<std::size_t>(j) * p + l] += c[j] * c[l];
  }
  return scatter;
}

double quadratic_form(std::span<const double> d, const SymMatrix& m) {
  double q = 0.0;
  for (int i = 0; i < m.dim(); ++i)
    for (int j = 0; j < m.dim(); ++j) q += d[i] * m(i, j) * d[j];
  return q;
}

}  // namespace

SymMatrix pooled_covariance(const SampleSet& x, const SampleSet& y) {
  if (x.n_vars() != y.n_vars())
    throw DimensionMismatch("pooled_covariance: x has " + std::to_string(x.n_vars()) + " variables, y has " +
                            std::to_string(y.n_vars()));
  if (x.n_obs() < 2 && y.n_obs() < 2)
    throw InvalidInput("pooled_covariance: at least one group needs >= 2 observations");
  if (x.n_obs() + y.n_obs() < 3) throw InvalidInput("pooled_covariance: combined sample size must be >= 3");

  // Per-group scatters added entrywise: the result is bit-identical under
  // a swap of x and y.
  const int p = x.n_vars();
  const std::vector<double> sx = centered_scatter(x);
  const std::vector<double> sy = centered_scatter(y);

  const double divisor = x.n_obs() + y.n_obs() - 2;
  SymMatrix s(p);
  for (int j = 0; j < p; ++j)
    for (int l = j; l < p; ++l) {
      const std::size_t idx = static_cast<std::size_t>(j) * p + l;
      s.set(j, l, (sx[idx] + sy[idx]) / divisor);
    }
  return s;
}

HotellingResult hotelling_t2(const SampleSet& x, const SampleSet& y) {
  if (x.n_vars() != y.n_vars())
    throw DimensionMismatch("hotelling_t2: x has " + std::to_string(x.n_vars()) + " variables, y has " +
                            std::to_string(y.n_vars()));
  const int n = x.n_vars();
  const int n_x = x.n_obs();
  const int n_y = y.n_obs();
  if (n >= n_x + n_y - 1)
    throw DegenerateDimension("hotelling_t2: n = " + std::to_string(n) + " >= n_x + n_y - 1 = " +
                              std::to_string(n_x + n_y - 1) + "; use permutation_test");

  const SymMatrix s = pooled_covariance(x, y);
  const std::vector<double> mx = x.column_means();
  const std::vector<double> my = y.column_means();
  std::vector<double> d(n);
  for (int j = 0; j < n; ++j) d[j] = mx[j] - my[j];

  const std::vector<double> v = solve_spd(s, d);
  const double k = static_cast<double>(n_x) * n_y / (n_x + n_y);
  const double t2 = std::max(0.0, k * std::inner_product(d.begin(), d.end(), v.begin(), 0.0));

  HotellingResult r;
  r.t2 = t2;
  r.k = k;
  r.df1 = n;
  r.df2 = n_x + n_y - n - 1;
  r.f_stat = t2 * r.df2 / (static_cast<double>(n) * (n_x + n_y - 2));
  r.p_value = 1.0 - f_cdf(r.f_stat, r.df1, r.df2);
  r.method = Method::exact_f;
  return r;
}

namespace {

// k (meanA - meanB)' Spooled^+ (meanA - meanB) for the group assignment
// given by the first n_x entries of idx.
double pinv_statistic(const SampleSet& pooled, std::span<const int> idx, int n_x) {
  const int p = pooled.n_vars();
  const int total = pooled.n_obs();
  const int n_y = total - n_x;

  SampleSet a(n_x, p);
  SampleSet b(n_y, p);
  for (int i = 0; i < n_x; ++i)
    for (int j = 0; j < p; ++j) a(i, j) = pooled(idx[i], j);
  for (int i = 0; i < n_y; ++i)
    for (int j = 0; j < p; ++j) b(i, j) = pooled(idx[n_x + i], j);

  const SymMatrix s = pooled_covariance(a, b);
  const SymMatrix s_pinv = pseudo_inverse(s);
  const std::vector<double> ma = a.column_means();
  const std::vector<double> mb = b.column_means();
  std::vector<double> d(p);
  for (int j = 0; j < p; ++j) d[j] = ma[j] - mb[j];

  const double k = static_cast<double>(n_x) * n_y / total;
  return std::max(0.0, k * quadratic_form(d, s_pinv));
}

}  // namespace

HotellingResult permutation_test(const SampleSet& x, const SampleSet& y, int reps, std::uint64_t seed) {
  if (x.n_vars() != y.n_vars())
    throw DimensionMismatch("permutation_test: x has " + std::to_string(x.n_vars()) + " variables, y has " +
                            std::to_string(y.n_vars()));
  if (reps < 100) throw InvalidInput("permutation_test: reps must be >= 100");

  const int p = x.n_vars();
  const int n_x = x.n_obs();
  const int n_y = y.n_obs();
  const int total = n_x + n_y;

  SampleSet pooled(total, p);
  for (int i = 0; i < n_x; ++i)
    for (int j = 0; j < p; ++j) pooled(i, j) = x(i, j);
  for (int i = 0; i < n_y; ++i)
    for (int j = 0; j < p; ++j) pooled(n_x + i, j) = y(i, j);

  std::vector<int> identity(total);
  std::iota(identity.begin(), identity.end(), 0);
  const double observed = pinv_statistic(pooled, identity, n_x);

  // One substream per permutation, keyed by (seed, r): the shuffle sequence
  // is the same for any worker count.
  std::vector<double> stats(reps);
  detail::parallel_for(reps, [&](std::int64_t r) {
    RandomStream stream(seed, static_cast<std::uint64_t>(r));
    std::vector<int> idx(total);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = total - 1; i > 0; --i)
      std::swap(idx[i], idx[stream.next_below(static_cast<std::uint64_t>(i) + 1)]);
    stats[r] = pinv_statistic(pooled, idx, n_x);
  });

  int at_least = 0;
  for (double s : stats)
    if (s >= observed) ++at_least;

  HotellingResult r;
  r.t2 = observed;
  r.k = static_cast<double>(n_x) * n_y / total;
  r.df1 = p;
  r.df2 = total - p - 1;
  r.f_stat = r.df2 > 0 ? observed * r.df2 / (static_cast<double>(p) * (total - 2)) : 0.0;
  r.p_value = (1.0 + at_least) / (reps + 1.0);
  r.method = Method::permutation;
  return r;
}

}  // namespace ht2

#ifndef HT2_HOTELLING_HPP
#define HT2_HOTELLING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ht2/sym_matrix.hpp"

namespace ht2 {

/**
 * One group's observations: n_obs rows by n_vars columns, row-major.
 */
class SampleSet {
 public:
  SampleSet(int n_obs, int n_vars);

  // Validates shape and finiteness; rows must all have the same length.
  static SampleSet from_rows(const std::vector<std::vector<double>>& rows);

  int n_obs() const { return n_obs_; }
  int n_vars() const { return n_vars_; }

  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n_vars_ + j]; }
  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n_vars_ + j]; }

  std::span<const double> row(int i) const {
    return {data_.data() + static_cast<std::size_t>(i) * n_vars_, static_cast<std::size_t>(n_vars_)};
  }

  std::vector<double> column_means() const;

 private:
  int n_obs_;
  int n_vars_;
  std::vector<double> data_;
};

enum class Method { exact_f, permutation };

struct HotellingResult {
  double t2 = 0.0;      // k (xbar-ybar)' Sinv (xbar-ybar)
  double k = 0.0;       // n_x n_y / (n_x + n_y)
  double f_stat = 0.0;  // t2 (n_x+n_y-n-1) / (n (n_x+n_y-2)); 0 when df2 <= 0
  int df1 = 0;          // n
  int df2 = 0;          // n_x + n_y - n - 1 (can be <= 0 on the permutation path)
  double p_value = 1.0;
  Method method = Method::exact_f;
};

// Pooled within-group scatter divided by n_x + n_y - 2.
SymMatrix pooled_covariance(const SampleSet& x, const SampleSet& y);

// Two-sample test with the exact F p-value. Requires n < n_x + n_y - 1;
// throws DegenerateDimension otherwise (callers wanting the singular case
// use permutation_test).
HotellingResult hotelling_t2(const SampleSet& x, const SampleSet& y);

// Statistic through the pseudo-inverse of the pooled covariance, p-value
// from `reps` label permutations of the pooled sample: (1 + #{perm >=
// observed}) / (reps + 1). Valid whether or not the covariance is singular;
// deterministic given seed, for any worker count.
HotellingResult permutation_test(const SampleSet& x, const SampleSet& y, int reps, std::uint64_t seed);

}  // namespace ht2

#endif  // HT2_HOTELLING_HPP

#ifndef HT2_SIMULATE_HPP
#define HT2_SIMULATE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "ht2/ellipse.hpp"
#include "ht2/equicorr.hpp"
#include "ht2/hotelling.hpp"
#include "ht2/rng.hpp"

namespace ht2 {

/**
 * One Monte Carlo experiment: two equicorrelated normal samples whose mean
 * difference is `delta`, replicated `reps` times from the given seed.
 */
struct SimConfig {
  EquicorrModel model;
  std::vector<double> delta;  // mu_x - mu_y, length n
  int n_x = 0;
  int n_y = 0;
  int reps = 0;
  std::uint64_t seed = 0;

  static SimConfig shifted(const EquicorrModel& model, const ShiftAlternative& alt, int n_x, int n_y, int reps,
                           std::uint64_t seed);
};

struct SimSummary {
  double mean_t2_over_k = 0.0;
  double variance_of_mean = 0.0;  // sample variance of per-rep T2/k, divided by reps
  int reps_used = 0;
  SimConfig config_echo;
};

// `count` i.i.d. draws from N(mean, Sigma(rho)) using the shared-factor
// decomposition x = mean + sqrt(rho) z0 1 + sqrt(1-rho) z: exact for the
// equicorrelation structure and O(n) per draw.
SampleSet sample_equicorr_mvn(const EquicorrModel& model, std::span<const double> mean, int count,
                              RandomStream& stream);

// Replicates the two-sample experiment (mu_x = 0, mu_y = -delta) and
// aggregates T2/k. Replication r draws from the substream (seed, r) only,
// so the output is bit-identical for any worker count.
SimSummary run_simulation(const SimConfig& cfg);

// Exact E[T2/k] under the alternative, from the noncentral-F mean:
//   (n_x+n_y-2)(n + lambda) / ((n_x+n_y-n-3) k),  lambda = k d' Sigma^-1 d.
// Requires n < n_x + n_y - 3. The model overload uses the closed-form
// inverse; the matrix overload solves numerically.
double expected_t2_over_k(const EquicorrModel& model, std::span<const double> delta, int n_x, int n_y);
double expected_t2_over_k(const SymMatrix& sigma, std::span<const double> delta, int n_x, int n_y);

struct CurvePoint {
  int m = 0;
  double mean_t2_over_k = 0.0;
  double variance_of_mean = 0.0;
  double t_star_squared = 0.0;
  double expected = 0.0;  // expected_t2_over_k at this m
};

// One simulated m-curve: for m = 1..n, the unit shift on the first m
// coordinates, n_x = n_y = round-half-up(ns_factor * n), `reps`
// replications per point. Each m runs from its own derived seed.
std::vector<CurvePoint> figure3_curve(int n, double rho, double ns_factor, int reps, std::uint64_t seed);

// The ten equal-power shift pairs for one rho: abscissae j*bound/5 for
// j = -4..5 with bound = sqrt(1/(1-rho^2)), upper root of the iso-power
// quadratic, both coordinates rounded to two decimals.
std::vector<ShiftPair> table1_pairs(double rho);

struct Table1Cell {
  double rho = 0.0;
  ShiftPair shift;
  int ns = 0;
  double mean_t2_over_k = 0.0;
  double variance_of_mean = 0.0;
  double expected = 0.0;
};

struct Table1Column {
  double rho = 0.0;
  int ns = 0;
  double var_of_estimate = 0.0;  // mean over the ten cells of variance_of_mean
  double row_scatter = 0.0;      // sample variance of the ten cell means
};

struct Table1Result {
  std::vector<Table1Cell> cells;
  std::vector<Table1Column> columns;
};

// The full two-dimensional equal-power protocol: for each rho, the ten
// shift pairs crossed with each n_s = n_x = n_y, `reps` replications each.
Table1Result table1(std::span<const double> rho_list, std::span<const int> ns_list, int reps, std::uint64_t seed);

}  // namespace ht2

#endif  // HT2_SIMULATE_HPP

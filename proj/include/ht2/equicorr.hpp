#ifndef HT2_EQUICORR_HPP
#define HT2_EQUICORR_HPP

#include <optional>

#include "ht2/sym_matrix.hpp"

namespace ht2 {

/**
 * Equicorrelation (compound symmetry) model: an n-dimensional covariance
 * with unit diagonal and constant off-diagonal rho.
 *
 * rho is restricted to [0, 1); rho = 0 is the independent baseline. Within
 * this range the matrix is positive definite for every n.
 */
class EquicorrModel {
 public:
  EquicorrModel(int n, double rho);

  int n() const { return n_; }
  double rho() const { return rho_; }

  // Builds the covariance matrix explicitly (used by numeric oracles and
  // by the simulator's SPD checks, not by the closed forms below).
  SymMatrix sigma() const;

 private:
  int n_;
  double rho_;
};

// Entries of the inverse covariance: diagonal alpha, off-diagonal -beta.
struct InverseCoefficients {
  double alpha;
  double beta;
};

// The alternative hypothesis: the first m coordinates of the mean
// difference are shifted by a, the rest are zero.
struct ShiftAlternative {
  int m = 0;
  double a = 1.0;
};

// alpha = (1+(n-2)rho) / ((1-rho)(1+(n-1)rho)), beta = rho / (same).
InverseCoefficients inverse_coefficients(const EquicorrModel& model);

// Population statistic for m shifted coordinates of magnitude a:
//   a^2 * m(1+(n-m-1)rho) / ((1-rho)(1+(n-1)rho)).
// Evaluated directly from the factored expression.
double t_star_squared(const EquicorrModel& model, const ShiftAlternative& alt);

// Change when the (m+1)-th coordinate is shifted:
//   alpha - 2 m beta = (1+(n-2m-2)rho) / ((1-rho)(1+(n-1)rho)).
double increment(const EquicorrModel& model, int m);

// Supremum of rho values for which shifting the (m+1)-th coordinate still
// increases the statistic: 1/(2m+2-n). nullopt when 2m+2-n <= 0 (the
// increment is positive for every rho in [0,1)).
std::optional<double> increment_positive_threshold(int n, int m);

// t_star_squared(m=1) - t_star_squared(m=n) for a unit shift.
//
// Closed form: (n-1)(2rho-1) / ((1-rho)(1+(n-1)rho)) — negative iff
// rho < 0.5, zero at rho = 0.5. (The factored numerator is (2rho-1), with a
// single marginal shift beating the all-shifted alternative exactly when
// rho exceeds one half.)
double one_vs_all_gap(const EquicorrModel& model);

// Integer m in [1, n] maximizing t_star_squared; ties break toward the
// smaller m. The continuous maximizer is (1+(n-1)rho)/(2 rho); for rho = 0
// the statistic is strictly increasing in m, so the maximizer is n.
int argmax_m(const EquicorrModel& model);

}  // namespace ht2

#endif  // HT2_EQUICORR_HPP

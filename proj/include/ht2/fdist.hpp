#ifndef HT2_FDIST_HPP
#define HT2_FDIST_HPP

namespace ht2 {

// Regularized incomplete beta function I_x(a, b) for x in [0, 1], a, b > 0.
// Continued-fraction evaluation with the symmetry switch at
// x = (a+1)/(a+b+2); iteration cap 300, convergence 1e-14.
double regularized_incomplete_beta(double a, double b, double x);

// P(F <= x) for the F distribution with (d1, d2) degrees of freedom, via
// I_{d1 x / (d1 x + d2)}(d1/2, d2/2). Absolute accuracy 1e-10.
double f_cdf(double x, int d1, int d2);

}  // namespace ht2

#endif  // HT2_FDIST_HPP

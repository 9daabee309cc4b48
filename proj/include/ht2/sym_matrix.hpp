#ifndef HT2_SYM_MATRIX_HPP
#define HT2_SYM_MATRIX_HPP

#include <span>
#include <vector>

namespace ht2 {

/**
 * Dense symmetric matrix, row-major storage.
 *
 * Symmetry is maintained by construction: set() writes both (i,j) and
 * (j,i). Problem sizes here are small (dim <= ~50), so no packed or
 * blocked formats.
 */
class SymMatrix {
 public:
  explicit SymMatrix(int dim);

  static SymMatrix identity(int dim);

  int dim() const { return dim_; }

  double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

  void set(int i, int j, double v);

  double max_abs() const;
  double frobenius_norm() const;

 private:
  int dim_;
  std::vector<double> a_;
};

/**
 * Lower-triangular Cholesky factor L with L * L^T == m.
 */
class CholeskyFactor {
 public:
  int dim() const { return dim_; }
  double operator()(int i, int j) const { return l_[static_cast<std::size_t>(i) * dim_ + j]; }

  // Solves (L L^T) v = rhs by forward and back substitution.
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  friend CholeskyFactor cholesky(const SymMatrix& m);
  CholeskyFactor(int dim, std::vector<double> l) : dim_(dim), l_(std::move(l)) {}

  int dim_;
  std::vector<double> l_;
};

// Factors an SPD matrix. Throws NotPositiveDefinite when a pivot falls at or
// below dim * epsilon * max-diagonal.
CholeskyFactor cholesky(const SymMatrix& m);

// Solves m v = rhs for SPD m without forming the inverse.
std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> rhs);

// Moore-Penrose pseudo-inverse by cyclic Jacobi eigendecomposition.
// Eigenvalues with |lambda| <= rank_tol * max|lambda| are treated as zero.
SymMatrix pseudo_inverse(const SymMatrix& m, double rank_tol = 1e-10);

}  // namespace ht2

#endif  // HT2_SYM_MATRIX_HPP

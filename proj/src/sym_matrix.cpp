#include "ht2/sym_matrix.hpp"

#include <cmath>
#include <cstddef>
#include <limits>

#include "ht2/errors.hpp"

namespace ht2 {

SymMatrix::SymMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw InvalidInput("SymMatrix: dim must be >= 1");
  a_.assign(static_cast<std::size_t>(dim) * dim, 0.0);
}

SymMatrix SymMatrix::identity(int dim) {
  SymMatrix m(dim);
  for (int i = 0; i < dim; ++i) m.set(i, i, 1.0);
  return m;
}

void SymMatrix::set(int i, int j, double v) {
  a_[static_cast<std::size_t>(i) * dim_ + j] = v;
  a_[static_cast<std::size_t>(j) * dim_ + i] = v;
}

double SymMatrix::max_abs() const {
  double m = 0.0;
  for (double v : a_) m = std::max(m, std::fabs(v));
  return m;
}

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

CholeskyFactor cholesky(const SymMatrix& m) {
  const int n = m.dim();
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::fabs(m(i, i)));
  const double pivot_tol = n * std::numeric_limits<double>::epsilon() * max_diag;

  std::vector<double> l(static_cast<std::size_t>(n) * n, 0.0);
  auto L = [&](int i, int j) -> double& { return l[static_cast<std::size_t>(i) * n + j]; };

  for (int j = 0; j < n; ++j) {
    double d = m(j, j);
    for (int k = 0; k < j; ++k) d -= L(j, k) * L(j, k);
    if (d <= pivot_tol) throw NotPositiveDefinite("cholesky: pivot <= tolerance at column " + std::to_string(j));
    L(j, j) = std::sqrt(d);
    for (int i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      L(i, j) = s / L(j, j);
    }
  }
  return CholeskyFactor(n, std::move(l));
}

std::vector<double> CholeskyFactor::solve(std::span<const double> rhs) const {
  const int n = dim_;
  if (static_cast<int>(rhs.size()) != n) throw InvalidInput("CholeskyFactor::solve: rhs length != dim");
  auto L = [&](int i, int j) { return l_[static_cast<std::size_t>(i) * n + j]; };

  std::vector<double> v(rhs.begin(), rhs.end());
  for (int i = 0; i < n; ++i) {
    double s = v[i];
    for (int k = 0; k < i; ++k) s -= L(i, k) * v[k];
    v[i] = s / L(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = v[i];
    for (int k = i + 1; k < n; ++k) s -= L(k, i) * v[k];
    v[i] = s / L(i, i);
  }
  return v;
}

std::vector<double> solve_spd(const SymMatrix& m, std::span<const double> rhs) {
  return cholesky(m).solve(rhs);
}

namespace {

// Cyclic Jacobi rotations on a symmetric matrix; accumulates eigenvectors
// in v (columns). Sweep cap 100, off-diagonal tolerance 1e-12 * ||m||_F.
void jacobi_eigen(const SymMatrix& m, std::vector<double>& eigvals, std::vector<double>& v) {
  const int n = m.dim();
  std::vector<double> a(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] = m(i, j);

  v.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;

  auto A = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };
  auto V = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

  const double off_tol = 1e-12 * m.frobenius_norm();
  const int max_sweeps = 100;

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    off = std::sqrt(2.0 * off);
    if (off <= off_tol) {
      eigvals.resize(n);
      for (int i = 0; i < n; ++i) eigvals[i] = A(i, i);
      return;
    }

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = A(p, q);
        if (apq == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        const double app = A(p, p), aqq = A(q, q);
        A(p, p) = c * c * app - 2.0 * s * c * apq + s * s * aqq;
        A(q, q) = s * s * app + 2.0 * s * c * apq + c * c * aqq;
        A(p, q) = 0.0;
        A(q, p) = 0.0;
        for (int i = 0; i < n; ++i) {
          if (i == p || i == q) continue;
          const double aip = A(i, p), aiq = A(i, q);
          A(i, p) = c * aip - s * aiq;
          A(p, i) = A(i, p);
          A(i, q) = s * aip + c * aiq;
          A(q, i) = A(i, q);
        }
        for (int i = 0; i < n; ++i) {
          const double vip = V(i, p), viq = V(i, q);
          V(i, p) = c * vip - s * viq;
          V(i, q) = s * vip + c * viq;
        }
      }
    }
  }
  throw EigenFailure("jacobi_eigen: no convergence within 100 sweeps");
}

}  // namespace

SymMatrix pseudo_inverse(const SymMatrix& m, double rank_tol) {
  if (rank_tol <= 0.0) throw InvalidInput("pseudo_inverse: rank_tol must be > 0");
  const int n = m.dim();
  std::vector<double> eigvals, v;
  jacobi_eigen(m, eigvals, v);

  double max_abs_eig = 0.0;
  for (double e : eigvals) max_abs_eig = std::max(max_abs_eig, std::fabs(e));
  const double cut = rank_tol * max_abs_eig;

  std::vector<double> inv_eig(n, 0.0);
  for (int i = 0; i < n; ++i)
    if (std::fabs(eigvals[i]) > cut) inv_eig[i] = 1.0 / eigvals[i];

  auto V = [&](int i, int j) { return v[static_cast<std::size_t>(i) * n + j]; };
  SymMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += V(i, k) * inv_eig[k] * V(j, k);
      out.set(i, j, s);
    }
  }
  return out;
}

}  // namespace ht2

#ifndef DGSHOCK_EIG_HPP_
#define DGSHOCK_EIG_HPP_

#include <complex>
#include <vector>

namespace dgshock {

/// Small dense real matrix, row-major.
struct DenseMatrix {
  int n = 0;
  std::vector<double> a;

  DenseMatrix() = default;
  explicit DenseMatrix(int n_) : n(n_), a(static_cast<size_t>(n_) * n_, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * n + j]; }

  static DenseMatrix identity(int n);
  DenseMatrix multiply(const DenseMatrix& other) const;
  std::vector<double> apply(const std::vector<double>& x) const;
  double norm_inf() const;
};

struct EigenvalueResult {
  std::vector<std::complex<double>> values;
  bool converged = false;
};

/// All eigenvalues of a real dense matrix: balancing, Householder Hessenberg
/// reduction, Francis double-shift QR. Iteration cap 100 n.
EigenvalueResult eigenvalues(DenseMatrix a);

/// Right eigenvector for a computed eigenvalue, by inverse iteration with a
/// complex LU. Deterministic; normalized to unit 2-norm.
std::vector<std::complex<double>> eigenvector(const DenseMatrix& a, std::complex<double> lambda);

/// Singular values (descending) via one-sided Jacobi orthogonalization.
std::vector<double> singular_values(const DenseMatrix& a);

/// Rank of A - mu I with singular values below `threshold` treated as zero
/// (complex shift handled through the 2n x 2n real embedding).
int shifted_rank(const DenseMatrix& a, std::complex<double> mu, double threshold);

}  // namespace dgshock

#endif  // DGSHOCK_EIG_HPP_

#ifndef DGSHOCK_LEGENDRE_HPP_
#define DGSHOCK_LEGENDRE_HPP_

#include <span>
#include <utility>
#include <vector>

namespace dgshock {

/// Legendre polynomial L_k(s) on [-1,1] via the three-term recurrence
/// (k+1) L_{k+1} = (2k+1) s L_k - k L_{k-1}.
double eval_legendre(int k, double s);

/// d/ds L_k(s) via d_s L_k = d_s L_{k-2} + (2k-1) L_{k-1}.
double eval_legendre_deriv(int k, double s);

/// Entry N_{k,l} = \int_{-1}^1 L_l d_s L_k ds = 1 - (-1)^{k+l} for k > l >= 0,
/// zero otherwise. Integer-exact.
int coupling_n(int k, int l);

/// Entry M_{k,l} of d_s L_k = sum_l M_{k,l} L_l:
/// M_{k,l} = (2l+1)(1 - (-1)^{k+l})/2 for k > l >= 0, zero otherwise.
int coupling_m(int k, int l);

/// Dense (p+1)x(p+1) coupling matrices, strictly lower triangular.
struct CouplingMatrices {
  int p = 0;
  std::vector<int> n;  // row-major (p+1)^2
  std::vector<int> m;

  int n_at(int k, int l) const { return n[static_cast<size_t>(k) * (p + 1) + l]; }
  int m_at(int k, int l) const { return m[static_cast<size_t>(k) * (p + 1) + l]; }
};

CouplingMatrices coupling_matrices(int p);

/// Gauss-Legendre rule on [-1,1]; n points integrate degree 2n-1 exactly.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// Nodes by Newton iteration on the roots of L_n with Chebyshev initial
/// guesses; converges to ~1e-15.
QuadratureRule gauss_rule(int n);

/// Traces of a modal cell polynomial u(s) = sum_l c_l L_l(s):
///  left  = u(+1) (left trace at the right face)  = sum_l c_l
///  right = u(-1) (right trace at the left face)  = sum_l (-1)^l c_l
struct Traces {
  double left = 0.0;
  double right = 0.0;
};

Traces traces(std::span<const double> coeffs);

/// u(s) for modal coefficients c_l.
double eval_modal(std::span<const double> coeffs, double s);

}  // namespace dgshock

#endif  // DGSHOCK_LEGENDRE_HPP_

#include "dgshock/legendre.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace dgshock {

double eval_legendre(int k, double s) {
  if (k <= 0) return 1.0;
  double lm = 1.0;  // L_0
  double l = s;     // L_1
  for (int n = 1; n < k; ++n) {
    const double lp = ((2 * n + 1) * s * l - n * lm) / (n + 1);
    lm = l;
    l = lp;
  }
  return l;
}

double eval_legendre_deriv(int k, double s) {
  if (k <= 0) return 0.0;
  // d_s L_k = d_s L_{k-2} + (2k-1) L_{k-1}, with d_s L_0 = 0, d_s L_1 = 1.
  double dm = 0.0;  // d_s L_0
  double d = 1.0;   // d_s L_1
  double lm = 1.0;  // L_0
  double l = s;     // L_1
  for (int n = 2; n <= k; ++n) {
    const double dn = dm + (2 * n - 1) * l;
    const double ln = ((2 * n - 1) * s * l - (n - 1) * lm) / n;
    dm = d;
    d = dn;
    lm = l;
    l = ln;
  }
  return d;
}

int coupling_n(int k, int l) {
  if (k <= l || l < 0) return 0;
  return ((k + l) % 2 == 0) ? 0 : 2;
}

int coupling_m(int k, int l) {
  if (k <= l || l < 0) return 0;
  return ((k + l) % 2 == 0) ? 0 : (2 * l + 1);
}

CouplingMatrices coupling_matrices(int p) {
  if (p < 0) throw std::invalid_argument("coupling_matrices: p >= 0 required");
  CouplingMatrices c;
  c.p = p;
  const int n1 = p + 1;
  c.n.assign(static_cast<size_t>(n1) * n1, 0);
  c.m.assign(static_cast<size_t>(n1) * n1, 0);
  for (int k = 0; k <= p; ++k) {
    for (int l = 0; l <= p; ++l) {
      c.n[static_cast<size_t>(k) * n1 + l] = coupling_n(k, l);
      c.m[static_cast<size_t>(k) * n1 + l] = coupling_m(k, l);
    }
  }
  return c;
}

QuadratureRule gauss_rule(int n) {
  if (n < 1) throw std::invalid_argument("gauss_rule: n >= 1 required");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<size_t>(n));
  rule.weights.resize(static_cast<size_t>(n));
  const double pi = std::acos(-1.0);
  for (int i = 0; i < n; ++i) {
    // Chebyshev guess for the i-th root of L_n, then Newton on L_n.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dl = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double l = eval_legendre(n, x);
      dl = eval_legendre_deriv(n, x);
      const double dx = l / dl;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    dl = eval_legendre_deriv(n, x);
    rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<size_t>(n - 1 - i)] = 2.0 / ((1.0 - x * x) * dl * dl);
  }
  // Symmetrize so that nodes come in exact +/- pairs.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[static_cast<size_t>(n - 1 - i)] - rule.nodes[static_cast<size_t>(i)]);
    rule.nodes[static_cast<size_t>(i)] = -x;
    rule.nodes[static_cast<size_t>(n - 1 - i)] = x;
    const double w = 0.5 * (rule.weights[static_cast<size_t>(i)] + rule.weights[static_cast<size_t>(n - 1 - i)]);
    rule.weights[static_cast<size_t>(i)] = w;
    rule.weights[static_cast<size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<size_t>(n / 2)] = 0.0;
  return rule;
}

Traces traces(std::span<const double> coeffs) {
  Traces t;
  double sign = 1.0;
  for (const double c : coeffs) {
    t.left += c;
    t.right += sign * c;
    sign = -sign;
  }
  return t;
}

double eval_modal(std::span<const double> coeffs, double s) {
  double u = 0.0;
  for (size_t l = 0; l < coeffs.size(); ++l) u += coeffs[l] * eval_legendre(static_cast<int>(l), s);
  return u;
}

}  // namespace dgshock

#include "dgshock/eig.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgshock {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::multiply(const DenseMatrix& other) const {
  DenseMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < n; ++j) out(i, j) += aik * other(k, j);
    }
  }
  return out;
}

std::vector<double> DenseMatrix::apply(const std::vector<double>& x) const {
  std::vector<double> y(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += (*this)(i, j) * x[static_cast<size_t>(j)];
    y[static_cast<size_t>(i)] = acc;
  }
  return y;
}

double DenseMatrix::norm_inf() const {
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += std::abs((*this)(i, j));
    m = std::max(m, row);
  }
  return m;
}

namespace {

inline double sign_with(double magnitude, double sign_of) {
  return sign_of >= 0.0 ? std::abs(magnitude) : -std::abs(magnitude);
}

// Osborne balancing in powers of two.
void balance(DenseMatrix& a) {
  const int n = a.n;
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (int i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double g = r / radix;
      double f = 1.0;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double ginv = 1.0 / f;
        for (int j = 0; j < n; ++j) a(i, j) *= ginv;
        for (int j = 0; j < n; ++j) a(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form.
void hessenberg(DenseMatrix& a) {
  const int n = a.n;
  std::vector<double> v(static_cast<size_t>(n));
  for (int k = 0; k + 2 < n; ++k) {
    double norm = 0.0;
    for (int i = k + 1; i < n; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;
    const double alpha = -sign_with(norm, a(k + 1, k));
    double vnorm2 = 0.0;
    for (int i = k + 1; i < n; ++i) {
      v[static_cast<size_t>(i)] = a(i, k);
      if (i == k + 1) v[static_cast<size_t>(i)] -= alpha;
      vnorm2 += v[static_cast<size_t>(i)] * v[static_cast<size_t>(i)];
    }
    if (vnorm2 == 0.0) continue;
    // Left: A -= 2 v (v^T A) / (v^T v), rows k+1..n-1.
    for (int j = 0; j < n; ++j) {
      double dot = 0.0;
      for (int i = k + 1; i < n; ++i) dot += v[static_cast<size_t>(i)] * a(i, j);
      const double f = 2.0 * dot / vnorm2;
      for (int i = k + 1; i < n; ++i) a(i, j) -= f * v[static_cast<size_t>(i)];
    }
    // Right: A -= 2 (A v) v^T / (v^T v), cols k+1..n-1.
    for (int i = 0; i < n; ++i) {
      double dot = 0.0;
      for (int j = k + 1; j < n; ++j) dot += a(i, j) * v[static_cast<size_t>(j)];
      const double f = 2.0 * dot / vnorm2;
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * v[static_cast<size_t>(j)];
    }
    a(k + 1, k) = alpha;
    for (int i = k + 2; i < n; ++i) a(i, k) = 0.0;
  }
}

// Francis double-shift QR on an upper Hessenberg matrix. Classic EISPACK hqr
// organization; destroys `a`.
bool hqr(DenseMatrix& a, std::vector<std::complex<double>>& w, long iter_cap) {
  const int n = a.n;
  const double eps = std::numeric_limits<double>::epsilon();
  w.assign(static_cast<size_t>(n), {});

  double anorm = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));
  }
  if (anorm == 0.0) return true;  // zero matrix

  int nn = n - 1;
  double t = 0.0;
  long iter_total = 0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    for (;;) {
      for (l = nn; l > 0; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= eps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        w[static_cast<size_t>(nn--)] = x + t;
        break;
      }
      double y = a(nn - 1, nn - 1);
      double ww = a(nn, nn - 1) * a(nn - 1, nn);
      if (l == nn - 1) {
        double p = 0.5 * (y - x);
        const double q = p * p + ww;
        double z = std::sqrt(std::abs(q));
        x += t;
        if (q >= 0.0) {
          z = p + sign_with(z, p);
          w[static_cast<size_t>(nn - 1)] = w[static_cast<size_t>(nn)] = x + z;
          if (z != 0.0) w[static_cast<size_t>(nn)] = x - ww / z;
        } else {
          w[static_cast<size_t>(nn)] = {x + p, -z};
          w[static_cast<size_t>(nn - 1)] = std::conj(w[static_cast<size_t>(nn)]);
        }
        nn -= 2;
        break;
      }
      if (++iter_total > iter_cap) return false;
      if (its == 10 || its == 20) {
        // Exceptional shift.
        t += x;
        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
        const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
        y = x = 0.75 * s;
        ww = -0.4375 * s * s;
      }
      ++its;
      int m = 0;
      double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
      for (m = nn - 2; m >= l; --m) {
        z = a(m, m);
        const double rr = x - z;
        const double ss = y - z;
        p = (rr * ss - ww) / a(m + 1, m) + a(m, m + 1);
        q = a(m + 1, m + 1) - z - rr - ss;
        r = a(m + 2, m + 1);
        const double scale = std::abs(p) + std::abs(q) + std::abs(r);
        p /= scale;
        q /= scale;
        r /= scale;
        if (m == l) break;
        const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
        const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
        if (u <= eps * v) break;
      }
      for (int i = m; i < nn - 1; ++i) {
        a(i + 2, i) = 0.0;
        if (i != m) a(i + 2, i - 1) = 0.0;
      }
      for (int k = m; k < nn; ++k) {
        if (k != m) {
          p = a(k, k - 1);
          q = a(k + 1, k - 1);
          r = 0.0;
          if (k + 1 != nn) r = a(k + 2, k - 1);
          x = std::abs(p) + std::abs(q) + std::abs(r);
          if (x != 0.0) {
            p /= x;
            q /= x;
            r /= x;
          }
        }
        const double s = sign_with(std::sqrt(p * p + q * q + r * r), p);
        if (s == 0.0) continue;
        if (k == m) {
          if (l != m) a(k, k - 1) = -a(k, k - 1);
        } else {
          a(k, k - 1) = -s * x;
        }
        p += s;
        x = p / s;
        y = q / s;
        z = r / s;
        q /= p;
        r /= p;
        for (int j = k; j <= nn; ++j) {
          double pp = a(k, j) + q * a(k + 1, j);
          if (k + 1 != nn) {
            pp += r * a(k + 2, j);
            a(k + 2, j) -= pp * z;
          }
          a(k + 1, j) -= pp * y;
          a(k, j) -= pp * x;
        }
        const int mmin = std::min(nn, k + 3);
        for (int i = l; i <= mmin; ++i) {
          double pp = x * a(i, k) + y * a(i, k + 1);
          if (k + 1 != nn) {
            pp += z * a(i, k + 2);
            a(i, k + 2) -= pp * r;
          }
          a(i, k + 1) -= pp * q;
          a(i, k) -= pp;
        }
      }
    }
  }
  return true;
}

}  // namespace

EigenvalueResult eigenvalues(DenseMatrix a) {
  EigenvalueResult result;
  if (a.n == 0) {
    result.converged = true;
    return result;
  }
  balance(a);
  hessenberg(a);
  result.converged = hqr(a, result.values, 100L * a.n);
  std::sort(result.values.begin(), result.values.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  return result;
}

namespace {

// Complex LU solve with partial pivoting; near-zero pivots are nudged so
// inverse iteration can proceed on (nearly) singular shifts.
struct ComplexLu {
  int n;
  std::vector<std::complex<double>> lu;
  std::vector<int> perm;

  ComplexLu(const DenseMatrix& a, std::complex<double> mu) : n(a.n), lu(static_cast<size_t>(a.n) * a.n), perm(static_cast<size_t>(a.n)) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) lu[static_cast<size_t>(i) * n + j] = a(i, j);
      lu[static_cast<size_t>(i) * n + i] -= mu;
      perm[static_cast<size_t>(i)] = i;
    }
    const double tiny = 1e-300 + 1e-14 * a.norm_inf();
    for (int col = 0; col < n; ++col) {
      int pivot = col;
      for (int r = col + 1; r < n; ++r) {
        if (std::abs(lu[static_cast<size_t>(r) * n + col]) > std::abs(lu[static_cast<size_t>(pivot) * n + col])) pivot = r;
      }
      if (pivot != col) {
        for (int c = 0; c < n; ++c) std::swap(lu[static_cast<size_t>(col) * n + c], lu[static_cast<size_t>(pivot) * n + c]);
        std::swap(perm[static_cast<size_t>(col)], perm[static_cast<size_t>(pivot)]);
      }
      if (std::abs(lu[static_cast<size_t>(col) * n + col]) < tiny) {
        lu[static_cast<size_t>(col) * n + col] = tiny;
      }
      for (int r = col + 1; r < n; ++r) {
        const std::complex<double> f = lu[static_cast<size_t>(r) * n + col] / lu[static_cast<size_t>(col) * n + col];
        lu[static_cast<size_t>(r) * n + col] = f;
        for (int c = col + 1; c < n; ++c) lu[static_cast<size_t>(r) * n + c] -= f * lu[static_cast<size_t>(col) * n + c];
      }
    }
  }

  std::vector<std::complex<double>> solve(const std::vector<std::complex<double>>& b) const {
    std::vector<std::complex<double>> x(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x[static_cast<size_t>(i)] = b[static_cast<size_t>(perm[static_cast<size_t>(i)])];
    for (int i = 1; i < n; ++i) {
      for (int j = 0; j < i; ++j) x[static_cast<size_t>(i)] -= lu[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(j)];
    }
    for (int i = n - 1; i >= 0; --i) {
      for (int j = i + 1; j < n; ++j) x[static_cast<size_t>(i)] -= lu[static_cast<size_t>(i) * n + j] * x[static_cast<size_t>(j)];
      x[static_cast<size_t>(i)] /= lu[static_cast<size_t>(i) * n + i];
    }
    return x;
  }
};

double vec_norm(const std::vector<std::complex<double>>& v) {
  double acc = 0.0;
  for (const std::complex<double>& x : v) acc += std::norm(x);
  return std::sqrt(acc);
}

}  // namespace

std::vector<std::complex<double>> eigenvector(const DenseMatrix& a, std::complex<double> lambda) {
  const int n = a.n;
  const ComplexLu lu(a, lambda);
  // Deterministic pseudo-random start keeps repeated calls reproducible.
  std::vector<std::complex<double>> x(static_cast<size_t>(n));
  unsigned long state = 0x9e3779b97f4a7c15ull;
  for (int i = 0; i < n; ++i) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double re = 0.25 + static_cast<double>((state >> 16) & 0xffff) / 65536.0;
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    const double im = static_cast<double>((state >> 16) & 0xffff) / 65536.0 - 0.5;
    x[static_cast<size_t>(i)] = {re, im};
  }
  for (int it = 0; it < 4; ++it) {
    std::vector<std::complex<double>> y = lu.solve(x);
    const double norm = vec_norm(y);
    if (!(norm > 0.0) || !std::isfinite(norm)) break;
    for (auto& v : y) v /= norm;
    x = std::move(y);
  }
  return x;
}

std::vector<double> singular_values(const DenseMatrix& a) {
  const int n = a.n;
  // One-sided Jacobi on columns.
  std::vector<double> m(a.a);
  auto col_dot = [&](int i, int j) {
    double acc = 0.0;
    for (int r = 0; r < n; ++r) acc += m[static_cast<size_t>(r) * n + i] * m[static_cast<size_t>(r) * n + j];
    return acc;
  };
  const double eps = 1e-15;
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double aii = col_dot(i, i);
        const double ajj = col_dot(j, j);
        const double aij = col_dot(i, j);
        if (std::abs(aij) <= eps * std::sqrt(aii * ajj) || aij == 0.0) continue;
        rotated = true;
        const double tau = (ajj - aii) / (2.0 * aij);
        const double t = sign_with(1.0, tau) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int r = 0; r < n; ++r) {
          const double vi = m[static_cast<size_t>(r) * n + i];
          const double vj = m[static_cast<size_t>(r) * n + j];
          m[static_cast<size_t>(r) * n + i] = c * vi - s * vj;
          m[static_cast<size_t>(r) * n + j] = s * vi + c * vj;
        }
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sv(static_cast<size_t>(n));
  for (int j = 0; j < n; ++j) sv[static_cast<size_t>(j)] = std::sqrt(col_dot(j, j));
  std::sort(sv.begin(), sv.end(), std::greater<>());
  return sv;
}

int shifted_rank(const DenseMatrix& a, std::complex<double> mu, double threshold) {
  const int n = a.n;
  if (mu.imag() == 0.0) {
    DenseMatrix shifted = a;
    for (int i = 0; i < n; ++i) shifted(i, i) -= mu.real();
    const std::vector<double> sv = singular_values(shifted);
    int rank = 0;
    for (const double s : sv) rank += (s > threshold) ? 1 : 0;
    return rank;
  }
  // Real 2n x 2n embedding of A - mu I; its singular values are those of the
  // complex matrix, doubled.
  DenseMatrix embed(2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double re = a(i, j) - (i == j ? mu.real() : 0.0);
      embed(i, j) = re;
      embed(n + i, n + j) = re;
    }
    embed(i, n + i) = mu.imag();
    embed(n + i, i) = -mu.imag();
  }
  const std::vector<double> sv = singular_values(embed);
  int rank2 = 0;
  for (const double s : sv) rank2 += (s > threshold) ? 1 : 0;
  return rank2 / 2;
}

}  // namespace dgshock

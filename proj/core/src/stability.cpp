#include "dgshock/stability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgshock/legendre.hpp"

namespace dgshock {

namespace stability_constants {

double gamma1() { return std::pow(3.0, 2.0 / 3.0) - std::cbrt(3.0); }

double gamma2() { return std::pow(3.0, 7.0 / 6.0) + std::pow(3.0, 5.0 / 6.0); }

std::complex<double> gamma3() {
  const std::complex<double> z(-2.0, std::sqrt(6.0));
  return std::pow(10.0, 2.0 / 3.0) / std::pow(z, 1.0 / 3.0) + std::pow(10.0 * z, 1.0 / 3.0);
}

std::complex<double> gamma4(int sign) {
  const std::complex<double> g3 = gamma3();
  const std::complex<double> i(0.0, 1.0);
  return i * std::sqrt(8.0 + g3 + double(sign) * 8.0 / std::sqrt(g3 - 4.0));
}

}  // namespace stability_constants

DenseMatrix BlockTridiagonalOperator::dense() const {
  const int b = p + 1;
  DenseMatrix out(n_cells * b);
  for (int j = 0; j < n_cells; ++j) {
    for (int k = 0; k < b; ++k) {
      for (int l = 0; l < b; ++l) {
        out(j * b + k, j * b + l) = diag[static_cast<size_t>(j)](k, l);
        if (j > 0) out(j * b + k, (j - 1) * b + l) = sub[static_cast<size_t>(j)](k, l);
        if (j + 1 < n_cells) out(j * b + k, (j + 1) * b + l) = sup[static_cast<size_t>(j)](k, l);
      }
    }
  }
  return out;
}

std::vector<double> BlockTridiagonalOperator::apply(const std::vector<double>& w) const {
  const int b = p + 1;
  std::vector<double> out(static_cast<size_t>(n_cells) * b, 0.0);
  for (int j = 0; j < n_cells; ++j) {
    for (int k = 0; k < b; ++k) {
      double acc = 0.0;
      for (int l = 0; l < b; ++l) {
        acc += diag[static_cast<size_t>(j)](k, l) * w[static_cast<size_t>(j) * b + l];
        if (j > 0) acc += sub[static_cast<size_t>(j)](k, l) * w[(static_cast<size_t>(j) - 1) * b + l];
        if (j + 1 < n_cells) acc += sup[static_cast<size_t>(j)](k, l) * w[(static_cast<size_t>(j) + 1) * b + l];
      }
      out[static_cast<size_t>(j) * b + k] = acc;
    }
  }
  return out;
}

namespace {

// V_{k,l} = int_{-1}^1 f'(u_h) L_l d_s L_k ds over one cell.
DenseMatrix volume_linearization(std::span<const double> cell_coeffs, const ConvexFlux& flux) {
  const int p = static_cast<int>(cell_coeffs.size()) - 1;
  const QuadratureRule rule = gauss_rule(p <= 2 ? p + 1 : p + 2);
  DenseMatrix v(p + 1);
  for (int q = 0; q < rule.size(); ++q) {
    const double s = rule.nodes[static_cast<size_t>(q)];
    const double w = rule.weights[static_cast<size_t>(q)];
    const double fp = flux.f_prime(eval_modal(cell_coeffs, s));
    for (int k = 1; k <= p; ++k) {
      const double dk = eval_legendre_deriv(k, s);
      for (int l = 0; l <= p; ++l) v(k, l) += w * fp * eval_legendre(l, s) * dk;
    }
  }
  return v;
}

inline double lambda_k(double lambda, int k) { return (2 * k + 1) * lambda; }

}  // namespace

BlockTridiagonalOperator assemble(const ModalSolution& sol, NumericalFluxKind kind,
                                  const ConvexFlux& flux, double lambda, const BoundaryData& bc,
                                  const FluxOptions& opts, KinkBranch branch) {
  if (!(lambda > 0.0)) throw std::invalid_argument("assemble: lambda > 0 required");
  const int n = sol.n_cells;
  const int p = sol.p;
  const int b = p + 1;

  BlockTridiagonalOperator op;
  op.n_cells = n;
  op.p = p;
  op.sub.assign(static_cast<size_t>(n), DenseMatrix(b));
  op.diag.assign(static_cast<size_t>(n), DenseMatrix(b));
  op.sup.assign(static_cast<size_t>(n), DenseMatrix(b));

  // Face partials for faces 0..n.
  std::vector<FluxPartials> face(static_cast<size_t>(n) + 1);
  for (int f = 0; f <= n; ++f) {
    const double um = (f > 0) ? traces(sol.cell(f - 1)).left : bc.left_state;
    const double up = (f < n) ? traces(sol.cell(f)).right : bc.right_state;
    face[static_cast<size_t>(f)] = flux_partials(kind, um, up, flux, opts, branch);
    if (face[static_cast<size_t>(f)].kink) op.warnings.push_back({f, branch});
  }

  for (int j = 0; j < n; ++j) {
    const DenseMatrix vol = volume_linearization(sol.cell(j), flux);
    const FluxPartials& fl = face[static_cast<size_t>(j)];
    const FluxPartials& fr = face[static_cast<size_t>(j) + 1];
    for (int k = 0; k < b; ++k) {
      const double lk = lambda_k(lambda, k);
      const double sk = (k % 2 == 0) ? 1.0 : -1.0;
      for (int l = 0; l < b; ++l) {
        const double sl = (l % 2 == 0) ? 1.0 : -1.0;
        op.diag[static_cast<size_t>(j)](k, l) =
            (k == l ? 1.0 : 0.0) + lk * (vol(k, l) - fr.d_minus + sk * sl * fl.d_plus);
        if (j > 0) op.sub[static_cast<size_t>(j)](k, l) = sk * lk * fl.d_minus;
        if (j + 1 < n) op.sup[static_cast<size_t>(j)](k, l) = -sl * lk * fr.d_plus;
      }
    }
  }
  return op;
}

DenseMatrix godunov_uniform_left_block(int p, double lambda_l) {
  DenseMatrix m(p + 1);
  for (int k = 0; k <= p; ++k) {
    for (int l = 0; l <= p; ++l) {
      m(k, l) = (k == l ? 1.0 : 0.0) + lambda_k(lambda_l, k) * (coupling_n(k, l) - 1.0);
    }
  }
  return m;
}

DenseMatrix godunov_uniform_right_block(int p, double lambda_r) {
  DenseMatrix m(p + 1);
  for (int k = 0; k <= p; ++k) {
    for (int l = 0; l <= p; ++l) {
      const double alt = ((k + l) % 2 == 0) ? 1.0 : -1.0;
      m(k, l) = (k == l ? 1.0 : 0.0) + lambda_k(lambda_r, k) * (coupling_n(k, l) + alt);
    }
  }
  return m;
}

DenseMatrix godunov_shock_block(const ShockProfile& prof, double lambda, const ConvexFlux& flux) {
  const std::vector<double> phys = prof.physical_coeffs();
  const DenseMatrix vol = volume_linearization(phys, flux);
  const int p = prof.p;
  DenseMatrix m(p + 1);
  for (int k = 0; k <= p; ++k) {
    for (int l = 0; l <= p; ++l) {
      m(k, l) = (k == l ? 1.0 : 0.0) + lambda_k(lambda, k) * vol(k, l);
    }
  }
  return m;
}

DenseMatrix interface_shock_block(int p, double lambda_fprime) {
  DenseMatrix m(p + 1);
  for (int k = 0; k <= p; ++k) {
    for (int l = 0; l <= p; ++l) {
      m(k, l) = (k == l ? 1.0 : 0.0) + lambda_k(lambda_fprime, k) * coupling_n(k, l);
    }
  }
  return m;
}

Spectrum analyze_spectrum(const DenseMatrix& op, const SpectrumOptions& opts) {
  Spectrum spec;
  const EigenvalueResult eig = eigenvalues(op);
  spec.values = eig.values;
  spec.converged = eig.converged;
  for (const std::complex<double>& mu : spec.values) {
    spec.spectral_radius = std::max(spec.spectral_radius, std::abs(mu));
  }
  if (opts.want_vectors) {
    spec.vectors.reserve(spec.values.size());
    for (const std::complex<double>& mu : spec.values) spec.vectors.push_back(eigenvector(op, mu));
  }

  // Cluster eigenvalues near the unit circle and estimate their geometric
  // multiplicity from the rank of L - mu I.
  std::vector<bool> used(spec.values.size(), false);
  const double scale = op.norm_inf();
  for (size_t i = 0; i < spec.values.size(); ++i) {
    if (used[i] || std::abs(std::abs(spec.values[i]) - 1.0) >= opts.unit_tol) continue;
    std::complex<double> sum = 0.0;
    int count = 0;
    for (size_t j = i; j < spec.values.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(spec.values[j] - spec.values[i]) < opts.cluster_tol) {
        used[j] = true;
        sum += spec.values[j];
        ++count;
      }
    }
    DefectInfo info;
    info.mu = sum / double(count);
    info.algebraic = count;
    info.geometric = op.n - shifted_rank(op, info.mu, opts.svd_rel_tol * std::max(scale, 1.0));
    spec.defects.push_back(info);
  }

  spec.stable = spec.converged && spec.spectral_radius <= 1.0 + opts.radius_tol;
  for (const DefectInfo& d : spec.defects) {
    if (d.geometric < d.algebraic) spec.stable = false;
  }
  return spec;
}

BlockSpectra godunov_block_spectra(const ShockProfile& prof, double lambda,
                                   const ConvexFlux& flux) {
  BlockSpectra out;
  const double lambda_l = lambda * flux.f_prime(prof.u_left);
  const double lambda_r = lambda * flux.f_prime(prof.u_right);
  out.left = analyze_spectrum(godunov_uniform_left_block(prof.p, lambda_l));
  out.shock = analyze_spectrum(godunov_shock_block(prof, lambda, flux));
  out.right = analyze_spectrum(godunov_uniform_right_block(prof.p, lambda_r));
  return out;
}

std::optional<std::vector<std::vector<std::complex<double>>>> spectra_by_cells(
    const BlockTridiagonalOperator& op) {
  auto is_zero = [](const DenseMatrix& m) {
    for (const double v : m.a) {
      if (v != 0.0) return false;
    }
    return true;
  };
  int split = -1;
  for (int m = 0; m < op.n_cells; ++m) {
    bool ok = true;
    for (int j = 0; j < m && ok; ++j) ok = is_zero(op.sup[static_cast<size_t>(j)]);
    for (int j = m + 1; j < op.n_cells && ok; ++j) ok = is_zero(op.sub[static_cast<size_t>(j)]);
    if (ok) {
      split = m;
      break;
    }
  }
  if (split < 0) return std::nullopt;
  std::vector<std::vector<std::complex<double>>> out;
  out.reserve(static_cast<size_t>(op.n_cells));
  for (int j = 0; j < op.n_cells; ++j) {
    const EigenvalueResult eig = eigenvalues(op.diag[static_cast<size_t>(j)]);
    if (!eig.converged) return std::nullopt;
    out.push_back(eig.values);
  }
  return out;
}

DenseMatrix rk_amplification(const DenseMatrix& op, int order) {
  const int n = op.n;
  if (order == 1) return op;
  DenseMatrix z = op;
  for (int i = 0; i < n; ++i) z(i, i) -= 1.0;
  if (order == 2) {
    DenseMatrix out = op;
    const DenseMatrix z2 = z.multiply(z);
    for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += 0.5 * z2.a[i];
    return out;
  }
  if (order == 3) {
    const DenseMatrix z2 = z.multiply(z);
    const DenseMatrix z3 = z2.multiply(z);
    DenseMatrix out = DenseMatrix::identity(n);
    for (size_t i = 0; i < out.a.size(); ++i) {
      out.a[i] += z.a[i] + 0.5 * z2.a[i] + z3.a[i] / 6.0;
    }
    return out;
  }
  throw std::invalid_argument("rk_amplification: order must be 1, 2 or 3");
}

std::complex<double> rk_scalar_amplification(std::complex<double> mu, int order) {
  const std::complex<double> z = mu - 1.0;
  switch (order) {
    case 1:
      return mu;
    case 2:
      return mu + 0.5 * z * z;
    case 3:
      return 1.0 + z + 0.5 * z * z + z * z * z / 6.0;
    default:
      throw std::invalid_argument("rk_scalar_amplification: order must be 1, 2 or 3");
  }
}

TableSpectra table_oracle(int p, double s_c, double lambda, double u_l, double u_r) {
  using std::complex;
  const double lambda_l = lambda * u_l;   // Burgers: f'(u) = u
  const double lambda_r = lambda * u_r;
  const double lambda_bar = u_l * lambda;
  const double g1 = stability_constants::gamma1();
  const double g2 = stability_constants::gamma2();
  TableSpectra t;

  const bool interface_shock = std::abs(std::abs(s_c) - 1.0) < 1e-12;

  if (p == 0) {
    t.left = {1.0 - lambda_l};
    t.shock = {1.0};
    t.right = {1.0 + lambda_r};
    return t;
  }
  if (p == 1) {
    t.left = {complex<double>(1.0 - 2.0 * lambda_l, -lambda_l * std::sqrt(2.0)),
              complex<double>(1.0 - 2.0 * lambda_l, lambda_l * std::sqrt(2.0))};
    t.right = {complex<double>(1.0 + 2.0 * lambda_r, -lambda_r * std::sqrt(2.0)),
               complex<double>(1.0 + 2.0 * lambda_r, lambda_r * std::sqrt(2.0))};
    if (interface_shock) {
      t.shock = {1.0, 1.0};
    } else {
      t.shock = {1.0, 1.0 - 2.0 * lambda_bar * std::sqrt(3.0 * (1.0 - s_c * s_c))};
    }
    return t;
  }
  if (p == 2) {
    t.left = {1.0 - lambda_l * (3.0 + g1),
              complex<double>(1.0 - 0.5 * lambda_l * (6.0 - g1), -0.5 * lambda_l * g2),
              complex<double>(1.0 - 0.5 * lambda_l * (6.0 - g1), 0.5 * lambda_l * g2)};
    t.right = {1.0 + lambda_r * (3.0 + g1),
               complex<double>(1.0 + 0.5 * lambda_r * (6.0 - g1), -0.5 * lambda_r * g2),
               complex<double>(1.0 + 0.5 * lambda_r * (6.0 - g1), 0.5 * lambda_r * g2)};
    if (interface_shock || std::abs(std::abs(s_c) - 2.0 / 3.0) < 1e-12) {
      t.shock = {1.0, 1.0, 1.0};
    } else if (std::abs(s_c) < 2.0 / 3.0) {
      const double root = std::sqrt(3.0 * (4.0 - 9.0 * s_c * s_c));
      t.shock = {1.0, 1.0 - lambda_bar * root, 1.0 - 2.0 * lambda_bar * root};
    } else {
      const double q = std::sqrt(5.0 * (1.0 - s_c * s_c));
      const double rad = (s_c > 0.0 ? 3.0 * s_c * q : -3.0 * s_c * q) - 6.0 * (1.0 - s_c * s_c);
      const double omega = 2.0 * lambda_bar * std::sqrt(rad);
      t.shock = {1.0, complex<double>(1.0, omega), complex<double>(1.0, -omega)};
    }
    return t;
  }
  if (p == 3) {
    if (interface_shock) {
      t.shock = {1.0, 1.0, 1.0, 1.0};
      return t;
    }
    if (std::abs(std::abs(s_c) - 1.0 / 6.0) < 1e-12) {
      t.shock = {1.0, 1.0, 1.0, 1.0 - 10.0 * lambda_bar / std::sqrt(3.0)};
      return t;
    }
  }
  throw std::invalid_argument("table_oracle: unsupported (p, s_c) combination");
}

std::vector<UnstableMode> unstable_mode_structure(const DenseMatrix& op, const Spectrum& spectrum,
                                                  int p, int shock_cell) {
  std::vector<UnstableMode> modes;
  const int b = p + 1;
  for (size_t i = 0; i < spectrum.values.size(); ++i) {
    const std::complex<double> mu = spectrum.values[i];
    if (std::abs(mu) <= 1.0 + 1e-9) continue;
    if (mu.imag() < 0.0) continue;  // keep one of each conjugate pair
    UnstableMode mode;
    mode.mu = mu;
    const std::vector<std::complex<double>> v =
        (i < spectrum.vectors.size() && !spectrum.vectors[i].empty()) ? spectrum.vectors[i]
                                                                      : eigenvector(op, mu);
    mode.shock_components.assign(v.begin() + static_cast<long>(shock_cell) * b,
                                 v.begin() + static_cast<long>(shock_cell + 1) * b);
    // Rotate the phase so the highest-mode component is real and positive,
    // then read off the real part.
    std::complex<double> pivot = mode.shock_components[static_cast<size_t>(p)];
    if (std::abs(pivot) < 1e-300) pivot = 1.0;
    const std::complex<double> phase = std::conj(pivot) / std::abs(pivot);
    mode.real_part.resize(static_cast<size_t>(b));
    double total = 0.0;
    for (int l = 0; l < b; ++l) {
      mode.real_part[static_cast<size_t>(l)] = (phase * mode.shock_components[static_cast<size_t>(l)]).real();
      total += std::abs(mode.real_part[static_cast<size_t>(l)]);
    }
    mode.mode_p_ratio = total > 0.0 ? std::abs(mode.real_part[static_cast<size_t>(p)]) / total : 0.0;
    modes.push_back(std::move(mode));
  }
  return modes;
}

}  // namespace dgshock

#ifndef DGSHOCK_STABILITY_HPP_
#define DGSHOCK_STABILITY_HPP_

#include <complex>
#include <optional>
#include <vector>

#include "dgshock/eig.hpp"
#include "dgshock/flux.hpp"
#include "dgshock/mesh.hpp"
#include "dgshock/profile.hpp"

namespace dgshock {

/// Quoted closed-form constants of the stability tables, recomputed from
/// their definitions.
namespace stability_constants {
double gamma1();                       // 3^{2/3} - 3^{1/3}
double gamma2();                       // 3^{7/6} + 3^{5/6}
std::complex<double> gamma3();         // 10^{2/3}(i sqrt6 - 2)^{-1/3} + (10(i sqrt6 - 2))^{1/3}
std::complex<double> gamma4(int sign); // i (8 + gamma3 +- 8 (gamma3 - 4)^{-1/2})^{1/2}
}  // namespace stability_constants

/// Linearization of one forward-Euler step about a modal state. Blocks are
/// (p+1)^2; sub/sup blocks at the boundary rows are absent (ghost states are
/// fixed data).
struct BlockTridiagonalOperator {
  int n_cells = 0;
  int p = 0;
  std::vector<DenseMatrix> sub;   // L_{j,j-1}, sub[0] unused
  std::vector<DenseMatrix> diag;  // L_{j,j}
  std::vector<DenseMatrix> sup;   // L_{j,j+1}, sup[n-1] unused

  struct KinkWarning {
    int face = 0;
    KinkBranch branch = KinkBranch::LeftUpwind;
  };
  std::vector<KinkWarning> warnings;

  DenseMatrix dense() const;
  std::vector<double> apply(const std::vector<double>& w) const;
};

/// Gateaux derivative of the forward-Euler map with lambda = dt/h. Flux
/// partials at Godunov kinks take the requested one-sided branch and are
/// recorded as warnings.
BlockTridiagonalOperator assemble(const ModalSolution& sol, NumericalFluxKind kind,
                                  const ConvexFlux& flux, double lambda, const BoundaryData& bc,
                                  const FluxOptions& opts = {},
                                  KinkBranch branch = KinkBranch::LeftUpwind);

/// Diagonal blocks of the Godunov-linearized operator:
/// uniform supersonic cells, the shock cell, uniform subsonic cells.
DenseMatrix godunov_uniform_left_block(int p, double lambda_l);
DenseMatrix godunov_uniform_right_block(int p, double lambda_r);
DenseMatrix godunov_shock_block(const ShockProfile& prof, double lambda, const ConvexFlux& flux);
/// Shock-cell block in the interface-shock limit s_c = +-1: I + lambda_k f' N.
DenseMatrix interface_shock_block(int p, double lambda_fprime);

struct DefectInfo {
  std::complex<double> mu;
  int algebraic = 0;
  int geometric = 0;
};

struct Spectrum {
  std::vector<std::complex<double>> values;
  std::vector<std::vector<std::complex<double>>> vectors;  // filled on request
  double spectral_radius = 0.0;
  bool stable = false;
  std::vector<DefectInfo> defects;  // near-unit-modulus clusters
  bool converged = false;
};

struct SpectrumOptions {
  double radius_tol = 1e-8;   // |mu| <= 1 + radius_tol allowed
  double unit_tol = 1e-6;     // ||mu| - 1| < unit_tol triggers the defect test
  double cluster_tol = 1e-6;  // eigenvalue grouping radius
  double svd_rel_tol = 1e-8;  // singular values below this * |L| are zero
  bool want_vectors = false;
};

/// Eigenvalues (in-house QR), spectral radius, and the semisimplicity-based
/// stability verdict of the iteration matrix.
Spectrum analyze_spectrum(const DenseMatrix& op, const SpectrumOptions& opts = {});

struct BlockSpectra {
  Spectrum left;
  Spectrum shock;
  Spectrum right;
};

/// Spectra of the three diagonal blocks the Godunov-linearized operator
/// reduces to when the shock is interior and the trace conditions hold.
BlockSpectra godunov_block_spectra(const ShockProfile& prof, double lambda,
                                   const ConvexFlux& flux);

/// Exact spectrum through the one-sided coupling structure: when some cell m
/// has zero super-blocks everywhere left of it and zero sub-blocks everywhere
/// right of it, a cell reordering makes the operator block triangular and the
/// spectrum is the union of the diagonal-block spectra. Returns the
/// per-cell eigenvalues, or nothing when the structure is absent.
std::optional<std::vector<std::vector<std::complex<double>>>> spectra_by_cells(
    const BlockTridiagonalOperator& op);

/// Stability polynomial of the SSP-RK schemes applied to a frozen linear
/// operator: order 1 -> L; 2 -> L + (L-I)^2/2; 3 -> I + Z + Z^2/2 + Z^3/6.
DenseMatrix rk_amplification(const DenseMatrix& op, int order);
std::complex<double> rk_scalar_amplification(std::complex<double> mu, int order);

/// Closed-form eigenvalue oracle (Tables of the stability analysis).
/// Full rows for p <= 2 at interior s_c; interface/defect points s_c = +-1
/// (p <= 3) and s_c = +-1/6 (p = 3) give the shock entries only.
struct TableSpectra {
  std::vector<std::complex<double>> left;
  std::vector<std::complex<double>> shock;
  std::vector<std::complex<double>> right;
};

TableSpectra table_oracle(int p, double s_c, double lambda, double u_l, double u_r);

/// Shock-cell structure of the amplified modes.
struct UnstableMode {
  std::complex<double> mu;
  std::vector<std::complex<double>> shock_components;
  std::vector<double> real_part;  // phase-normalized so component p is real
  double mode_p_ratio = 0.0;      // |r_p| / sum_l |r_l|
};

std::vector<UnstableMode> unstable_mode_structure(const DenseMatrix& op, const Spectrum& spectrum,
                                                  int p, int shock_cell);

}  // namespace dgshock

#endif  // DGSHOCK_STABILITY_HPP_

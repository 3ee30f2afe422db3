#ifndef DGSHOCK_SCHEME_HPP_
#define DGSHOCK_SCHEME_HPP_

#include <optional>
#include <span>
#include <vector>

#include "dgshock/flux.hpp"
#include "dgshock/legendre.hpp"
#include "dgshock/mesh.hpp"
#include "dgshock/svv.hpp"

namespace dgshock {

/// Modal DG discretization of u_t + f(u)_x = 0 on a uniform mesh with weakly
/// imposed Dirichlet ghost states. Residual components follow
///   R_j^k = int_{-1}^1 f(u_h) d_s L_k ds - h_{j+1/2} + (-1)^k h_{j-1/2},
/// and forward Euler updates U_j^k += (2k+1) (dt/h) R_j^k.
class DgScheme {
 public:
  DgScheme(Mesh1D mesh, int p, NumericalFluxKind kind, ConvexFlux flux, BoundaryData bc,
           FluxOptions opts = {}, std::optional<SvvConfig> svv = std::nullopt,
           std::optional<int> n_quad = std::nullopt);

  const Mesh1D& mesh() const { return mesh_; }
  int p() const { return p_; }
  NumericalFluxKind kind() const { return kind_; }
  const ConvexFlux& flux() const { return flux_; }
  const BoundaryData& bc() const { return bc_; }
  const FluxOptions& flux_options() const { return opts_; }
  const QuadratureRule& volume_rule() const { return rule_; }
  bool svv_enabled() const { return svv_.has_value(); }
  const SvvResolved* svv() const { return svv_ ? &*svv_ : nullptr; }

  /// Residual vector of a single cell (includes the SVV term when enabled).
  std::vector<double> cell_residual(const ModalSolution& sol, int j) const;

  /// Full residual array (n_cells x (p+1) row-major) and its norm
  /// max_{j,k} |R_j^k| / h.
  struct Residual {
    std::vector<double> values;
    double norm = 0.0;
  };
  Residual residual_all(const ModalSolution& sol) const;

  /// dt = cfl_scale/(2p+1) * min_j h / max_q |f'(u_h(xi_q))| with the
  /// denominator floored at 1e-14.
  double compute_dt(const ModalSolution& sol, double cfl_scale = 1.0) const;

  ModalSolution euler_step(const ModalSolution& sol, double dt) const;
  ModalSolution ssp_rk2_step(const ModalSolution& sol, double dt) const;
  ModalSolution ssp_rk3_step(const ModalSolution& sol, double dt) const;
  ModalSolution step(const ModalSolution& sol, double dt, int rk_order) const;

  /// Numerical flux value at face i (0..n_cells), using ghost states at the
  /// boundary faces.
  double face_flux(const ModalSolution& sol, int face) const;

 private:
  void add_scaled_residual(const ModalSolution& base, const ModalSolution& eval, double scale,
                           ModalSolution& out) const;

  Mesh1D mesh_;
  int p_;
  NumericalFluxKind kind_;
  ConvexFlux flux_;
  BoundaryData bc_;
  FluxOptions opts_;
  std::optional<SvvResolved> svv_;
  QuadratureRule rule_;
  std::vector<double> basis_;        // L_k(xi_q), k-major
  std::vector<double> basis_deriv_;  // d_s L_k(xi_q)
};

struct RunReport {
  long steps = 0;
  std::vector<double> residual_history;  // norm seen before each taken step
  bool converged = false;
  double final_residual = 0.0;
  ModalSolution solution;
};

/// Iterates the chosen SSP-RK scheme with compute_dt each step until the
/// residual norm drops below tol or max_steps is exhausted.
RunReport run_to_steady(const DgScheme& scheme, ModalSolution initial, int rk_order,
                        double cfl_scale, long max_steps, double tol);

/// Steady Burgers shock experiment on [0,1] with u(0) = -u(1) = 1 and the
/// two-piece linear initial condition selecting x_c = 1/2 + ubar/4.
struct BurgersSteadyConfig {
  int p = 1;
  int n_cells = 20;
  NumericalFluxKind kind = NumericalFluxKind::Godunov;
  double ubar = 0.1;
  int rk_order = 3;
  double cfl_scale = 1.0;
  long max_steps = 200000;
  double tol = 1e-12;
  std::optional<SvvConfig> svv;
  FluxOptions flux_opts{};
};

struct BurgersSteadyResult {
  RunReport report;
  int shock_cell = 0;  // cell containing x_c
  double s_c = 0.0;    // relative shock position in that cell
};

BurgersSteadyResult run_burgers_steady(const BurgersSteadyConfig& config);

/// Shock-cell geometry implied by ubar: landing cell and relative position.
struct ShockPlacement {
  int cell = 0;
  double s_c = 0.0;
  double x_c = 0.5;
};
ShockPlacement shock_placement(double ubar, const Mesh1D& mesh);

}  // namespace dgshock

#endif  // DGSHOCK_SCHEME_HPP_

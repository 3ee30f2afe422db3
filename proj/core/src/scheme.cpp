#include "dgshock/scheme.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dgshock {

DgScheme::DgScheme(Mesh1D mesh, int p, NumericalFluxKind kind, ConvexFlux flux, BoundaryData bc,
                   FluxOptions opts, std::optional<SvvConfig> svv, std::optional<int> n_quad)
    : mesh_(mesh), p_(p), kind_(kind), flux_(std::move(flux)), bc_(bc), opts_(opts) {
  if (p_ < 0) throw std::invalid_argument("DgScheme: p >= 0 required");
  if (mesh_.n_cells < 1) throw std::invalid_argument("DgScheme: n_cells >= 1 required");
  const int nq = n_quad.value_or(p_ <= 2 ? p_ + 1 : p_ + 2);
  rule_ = gauss_rule(nq);
  basis_.resize(static_cast<size_t>(p_ + 1) * nq);
  basis_deriv_.resize(static_cast<size_t>(p_ + 1) * nq);
  for (int k = 0; k <= p_; ++k) {
    for (int q = 0; q < nq; ++q) {
      basis_[static_cast<size_t>(k) * nq + q] = eval_legendre(k, rule_.nodes[static_cast<size_t>(q)]);
      basis_deriv_[static_cast<size_t>(k) * nq + q] =
          eval_legendre_deriv(k, rule_.nodes[static_cast<size_t>(q)]);
    }
  }
  if (svv) svv_ = resolve_svv(*svv, p_, mesh_.h());
}

double DgScheme::face_flux(const ModalSolution& sol, int face) const {
  const double um = (face > 0) ? traces(sol.cell(face - 1)).left : bc_.left_state;
  const double up = (face < mesh_.n_cells) ? traces(sol.cell(face)).right : bc_.right_state;
  return numerical_flux(kind_, um, up, flux_, opts_);
}

std::vector<double> DgScheme::cell_residual(const ModalSolution& sol, int j) const {
  const int nq = rule_.size();
  std::vector<double> r(static_cast<size_t>(p_ + 1), 0.0);

  // Volume term int f(u_h) d_s L_k ds by quadrature.
  for (int q = 0; q < nq; ++q) {
    double u = 0.0;
    for (int l = 0; l <= p_; ++l) u += sol.at(j, l) * basis_[static_cast<size_t>(l) * nq + q];
    const double fw = flux_.f(u) * rule_.weights[static_cast<size_t>(q)];
    for (int k = 1; k <= p_; ++k) r[static_cast<size_t>(k)] += fw * basis_deriv_[static_cast<size_t>(k) * nq + q];
  }

  const double h_left = face_flux(sol, j);
  const double h_right = face_flux(sol, j + 1);
  double sign = 1.0;
  for (int k = 0; k <= p_; ++k) {
    r[static_cast<size_t>(k)] += -h_right + sign * h_left;
    sign = -sign;
  }

  if (svv_ && svv_->epsilon > 0.0) {
    const int m_j = detect_irregular(sol, j, flux_, bc_, mesh_.h(), svv_->detector_threshold)
                        ? svv_->m_shock
                        : svv_->m_smooth;
    const std::vector<double> visc = svv_term(sol.cell(j), *svv_, m_j, mesh_.h());
    for (int k = 0; k <= p_; ++k) r[static_cast<size_t>(k)] += visc[static_cast<size_t>(k)];
  }
  return r;
}

DgScheme::Residual DgScheme::residual_all(const ModalSolution& sol) const {
  Residual res;
  res.values.resize(static_cast<size_t>(mesh_.n_cells) * (p_ + 1));
  for (int j = 0; j < mesh_.n_cells; ++j) {
    const std::vector<double> r = cell_residual(sol, j);
    for (int k = 0; k <= p_; ++k) {
      const double v = r[static_cast<size_t>(k)];
      res.values[static_cast<size_t>(j) * (p_ + 1) + k] = v;
      if (!std::isfinite(v)) {
        res.norm = std::numeric_limits<double>::infinity();
      } else {
        res.norm = std::max(res.norm, std::abs(v));
      }
    }
  }
  res.norm /= mesh_.h();
  return res;
}

double DgScheme::compute_dt(const ModalSolution& sol, double cfl_scale) const {
  const int nq = rule_.size();
  double dt = std::numeric_limits<double>::infinity();
  for (int j = 0; j < mesh_.n_cells; ++j) {
    double speed = 0.0;
    for (int q = 0; q < nq; ++q) {
      double u = 0.0;
      for (int l = 0; l <= p_; ++l) u += sol.at(j, l) * basis_[static_cast<size_t>(l) * nq + q];
      speed = std::max(speed, std::abs(flux_.f_prime(u)));
    }
    dt = std::min(dt, mesh_.h() / std::max(speed, 1e-14));
  }
  dt = dt / (2 * p_ + 1);
  if (svv_ && svv_->epsilon > 0.0 && p_ >= 1) {
    // Explicit stability limit of the viscosity term; combined harmonically
    // with the advective bound.
    const double gnorm = std::max(svv_operator_norm(*svv_, p_), 1e-14);
    const double dt_visc = 0.25 * mesh_.h() * mesh_.h() / (svv_->epsilon * gnorm);
    dt = 1.0 / (1.0 / dt + 1.0 / dt_visc);
  }
  return cfl_scale * dt;
}

void DgScheme::add_scaled_residual(const ModalSolution& base, const ModalSolution& eval,
                                   double scale, ModalSolution& out) const {
  const double lam = scale / mesh_.h();
  out = base;
  for (int j = 0; j < mesh_.n_cells; ++j) {
    const std::vector<double> r = cell_residual(eval, j);
    for (int k = 0; k <= p_; ++k) out.at(j, k) += (2 * k + 1) * lam * r[static_cast<size_t>(k)];
  }
}

ModalSolution DgScheme::euler_step(const ModalSolution& sol, double dt) const {
  ModalSolution out;
  add_scaled_residual(sol, sol, dt, out);
  return out;
}

ModalSolution DgScheme::ssp_rk2_step(const ModalSolution& sol, double dt) const {
  // Heun: average of the state and the corrected Euler predictor.
  const ModalSolution u1 = euler_step(sol, dt);
  const ModalSolution u2 = euler_step(u1, dt);
  ModalSolution out = sol;
  for (size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = 0.5 * (sol.coeffs[i] + u2.coeffs[i]);
  return out;
}

ModalSolution DgScheme::ssp_rk3_step(const ModalSolution& sol, double dt) const {
  const ModalSolution u1 = euler_step(sol, dt);
  const ModalSolution e1 = euler_step(u1, dt);
  ModalSolution u2 = sol;
  for (size_t i = 0; i < u2.coeffs.size(); ++i)
    u2.coeffs[i] = 0.75 * sol.coeffs[i] + 0.25 * e1.coeffs[i];
  const ModalSolution e2 = euler_step(u2, dt);
  ModalSolution out = sol;
  for (size_t i = 0; i < out.coeffs.size(); ++i)
    out.coeffs[i] = (1.0 / 3.0) * sol.coeffs[i] + (2.0 / 3.0) * e2.coeffs[i];
  return out;
}

ModalSolution DgScheme::step(const ModalSolution& sol, double dt, int rk_order) const {
  switch (rk_order) {
    case 1:
      return euler_step(sol, dt);
    case 2:
      return ssp_rk2_step(sol, dt);
    case 3:
      return ssp_rk3_step(sol, dt);
    default:
      throw std::invalid_argument("step: rk_order must be 1, 2 or 3");
  }
}

RunReport run_to_steady(const DgScheme& scheme, ModalSolution initial, int rk_order,
                        double cfl_scale, long max_steps, double tol) {
  RunReport report;
  report.solution = std::move(initial);
  for (long step = 0;; ++step) {
    const DgScheme::Residual res = scheme.residual_all(report.solution);
    report.final_residual = res.norm;
    if (res.norm < tol) {
      report.converged = true;
      break;
    }
    if (!std::isfinite(res.norm)) break;  // diverged, no point stepping on
    if (step >= max_steps) break;
    const double dt = scheme.compute_dt(report.solution, cfl_scale);
    report.solution = scheme.step(report.solution, dt, rk_order);
    report.residual_history.push_back(res.norm);
  }
  report.steps = static_cast<long>(report.residual_history.size());
  return report;
}

ShockPlacement shock_placement(double ubar, const Mesh1D& mesh) {
  ShockPlacement placement;
  placement.x_c = 0.5 + 0.25 * ubar;
  placement.cell = mesh.locate(placement.x_c);
  placement.s_c = mesh.to_reference(placement.cell, placement.x_c);
  return placement;
}

BurgersSteadyResult run_burgers_steady(const BurgersSteadyConfig& config) {
  const Mesh1D mesh{0.0, 1.0, config.n_cells};
  const BoundaryData bc{1.0, -1.0};
  DgScheme scheme(mesh, config.p, config.kind, burgers(), bc, config.flux_opts, config.svv);

  const BurgersInitial init = burgers_initial(config.ubar);
  const std::array<double, 1> kinks{init.kink};
  ModalSolution start = project_initial(init.u0, mesh, config.p, kinks);

  BurgersSteadyResult result;
  const ShockPlacement placement = shock_placement(config.ubar, mesh);
  result.shock_cell = placement.cell;
  result.s_c = placement.s_c;
  result.report = run_to_steady(scheme, std::move(start), config.rk_order, config.cfl_scale,
                                config.max_steps, config.tol);
  return result;
}

}  // namespace dgshock

#ifndef DGSHOCK_SVV_HPP_
#define DGSHOCK_SVV_HPP_

#include <optional>
#include <span>
#include <vector>

#include "dgshock/flux.hpp"
#include "dgshock/mesh.hpp"

namespace dgshock {

/// Spectral vanishing viscosity configuration. Unset fields resolve to the
/// defaults epsilon = h/(p+1), m_smooth = p-1, m_shock = min(1, m_smooth);
/// for p = 1 the smooth default m = 0 is permitted (Q^0 = e^{-1}).
struct SvvConfig {
  std::optional<double> epsilon;
  std::optional<int> m_smooth;
  std::optional<int> m_shock;
  double detector_threshold = 1.0;
};

struct SvvResolved {
  double epsilon = 0.0;
  int m_smooth = 0;
  int m_shock = 0;
  double detector_threshold = 1.0;
};

/// Validates and fills defaults; requires 0 <= m_shock <= m_smooth < p.
SvvResolved resolve_svv(const SvvConfig& config, int p, double h);

/// Modal coefficients D^l of d_x u_h for a single cell:
/// D^l = (2/h) sum_{n=l+1}^p M_{n,l} U^n, for 0 <= l < p.
std::vector<double> derivative_coeffs(std::span<const double> cell_coeffs, double h);

/// Viscosity contribution to the cell residual vector:
/// term_k = -epsilon sum_{l=m_j}^{p-1} N_{k,l} Q^l D^l with
/// Q^l = exp(-((l-p)/(m_j-p))^2). The k = 0 component is always zero.
std::vector<double> svv_term(std::span<const double> cell_coeffs, const SvvResolved& config,
                             int m_j, double h);

/// Inflow-face jump indicator:
/// I_j = |jump at inflow face| / (h^{(p+1)/2} * max_cell |u_h|), flagged when
/// it exceeds the detector threshold. The inflow face follows the sign of
/// f' at the cell mean; outer traces at the boundary come from `bc`.
bool detect_irregular(const ModalSolution& sol, int j, const ConvexFlux& flux,
                      const BoundaryData& bc, double h, double threshold);

/// Infinity norm of the modal viscosity operator
/// G = diag(2k+1) * [sum_l N_{k,l} Q^l M_{n,l}], maximized over the
/// admissible m_j range. Bounds the explicit time-step limit of the SVV term.
double svv_operator_norm(const SvvResolved& config, int p);

}  // namespace dgshock

#endif  // DGSHOCK_SVV_HPP_

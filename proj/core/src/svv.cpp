#include "dgshock/svv.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgshock/legendre.hpp"

namespace dgshock {

SvvResolved resolve_svv(const SvvConfig& config, int p, double h) {
  if (p < 1) throw std::invalid_argument("resolve_svv: p >= 1 required");
  SvvResolved r;
  r.epsilon = config.epsilon.value_or(h / (p + 1));
  r.m_smooth = config.m_smooth.value_or(p - 1);
  r.m_shock = config.m_shock.value_or(std::min(1, r.m_smooth));
  r.detector_threshold = config.detector_threshold;
  if (r.epsilon < 0.0) throw std::invalid_argument("resolve_svv: epsilon >= 0 required");
  if (!(0 <= r.m_shock && r.m_shock <= r.m_smooth && r.m_smooth < p)) {
    throw std::invalid_argument("resolve_svv: need 0 <= m_shock <= m_smooth < p");
  }
  return r;
}

std::vector<double> derivative_coeffs(std::span<const double> cell_coeffs, double h) {
  const int p = static_cast<int>(cell_coeffs.size()) - 1;
  std::vector<double> d(static_cast<size_t>(std::max(p, 0)), 0.0);
  for (int l = 0; l < p; ++l) {
    double acc = 0.0;
    for (int n = l + 1; n <= p; ++n) acc += coupling_m(n, l) * cell_coeffs[static_cast<size_t>(n)];
    d[static_cast<size_t>(l)] = 2.0 / h * acc;
  }
  return d;
}

std::vector<double> svv_term(std::span<const double> cell_coeffs, const SvvResolved& config,
                             int m_j, double h) {
  const int p = static_cast<int>(cell_coeffs.size()) - 1;
  std::vector<double> term(static_cast<size_t>(p + 1), 0.0);
  if (config.epsilon == 0.0 || p < 1) return term;
  const std::vector<double> d = derivative_coeffs(cell_coeffs, h);
  for (int k = 1; k <= p; ++k) {
    double acc = 0.0;
    for (int l = m_j; l < p; ++l) {
      const double q = std::exp(-std::pow(double(l - p) / double(m_j - p), 2));
      acc += coupling_n(k, l) * q * d[static_cast<size_t>(l)];
    }
    term[static_cast<size_t>(k)] = -config.epsilon * acc;
  }
  return term;
}

bool detect_irregular(const ModalSolution& sol, int j, const ConvexFlux& flux,
                      const BoundaryData& bc, double h, double threshold) {
  const int p = sol.p;
  const Traces own = traces(sol.cell(j));
  const bool inflow_left = flux.f_prime(sol.mean(j)) >= 0.0;

  double jump = 0.0;
  if (inflow_left) {
    const double outer = (j > 0) ? traces(sol.cell(j - 1)).left : bc.left_state;
    jump = std::abs(outer - own.right);
  } else {
    const double outer = (j + 1 < sol.n_cells) ? traces(sol.cell(j + 1)).right : bc.right_state;
    jump = std::abs(outer - own.left);
  }

  double norm_inf = 0.0;
  constexpr int kSamples = 33;
  for (int i = 0; i < kSamples; ++i) {
    const double s = -1.0 + 2.0 * i / (kSamples - 1);
    norm_inf = std::max(norm_inf, std::abs(eval_modal(sol.cell(j), s)));
  }
  if (norm_inf < 1e-300) return false;

  const double indicator = jump / (std::pow(h, 0.5 * (p + 1)) * norm_inf);
  return indicator > threshold;
}

double svv_operator_norm(const SvvResolved& config, int p) {
  double worst = 0.0;
  for (int m = config.m_shock; m <= config.m_smooth; ++m) {
    for (int k = 1; k <= p; ++k) {
      double row = 0.0;
      for (int n = 1; n <= p; ++n) {
        double s = 0.0;
        for (int l = m; l < p; ++l) {
          const double q = std::exp(-std::pow(double(l - p) / double(m - p), 2));
          s += coupling_n(k, l) * q * coupling_m(n, l);
        }
        row += std::abs(s);
      }
      worst = std::max(worst, (2 * k + 1) * row);
    }
  }
  return worst;
}

}  // namespace dgshock

#include "dgshock/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dgshock/legendre.hpp"

namespace dgshock {

int Mesh1D::locate(double x) const {
  const int j = static_cast<int>(std::floor((x - x_min) / h()));
  return std::clamp(j, 0, n_cells - 1);
}

namespace {

// int_a^b u0(x(s)) L_l(s) ds over a reference sub-interval [a,b].
double piece_integral(const std::function<double(double)>& u0, const Mesh1D& mesh, int j, int l,
                      double a, double b, const QuadratureRule& rule) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (int q = 0; q < rule.size(); ++q) {
    const double s = mid + half * rule.nodes[static_cast<size_t>(q)];
    const double x = mesh.center(j) + 0.5 * mesh.h() * s;
    acc += rule.weights[static_cast<size_t>(q)] * u0(x) * eval_legendre(l, s);
  }
  return half * acc;
}

}  // namespace

ModalSolution project_initial(const std::function<double(double)>& u0, const Mesh1D& mesh, int p,
                              std::span<const double> kinks) {
  ModalSolution sol(p, mesh.n_cells);
  const QuadratureRule rule = gauss_rule(p + 2);
  for (int j = 0; j < mesh.n_cells; ++j) {
    // Reference-space breakpoints: any kink interior to this cell.
    std::vector<double> breaks{-1.0, 1.0};
    for (const double xk : kinks) {
      const double s = mesh.to_reference(j, xk);
      if (s > -1.0 + 1e-14 && s < 1.0 - 1e-14) breaks.push_back(s);
    }
    std::sort(breaks.begin(), breaks.end());
    for (int l = 0; l <= p; ++l) {
      double integral = 0.0;
      for (size_t i = 0; i + 1 < breaks.size(); ++i) {
        integral += piece_integral(u0, mesh, j, l, breaks[i], breaks[i + 1], rule);
      }
      sol.at(j, l) = 0.5 * (2 * l + 1) * integral;
    }
  }
  return sol;
}

BurgersInitial burgers_initial(double ubar) {
  if (!(ubar > -2.0 && ubar < 2.0)) {
    throw std::invalid_argument("burgers_initial: ubar must lie in (-2, 2)");
  }
  BurgersInitial init;
  init.u0 = [ubar](double x) {
    if (x < 0.5) return 1.0 - 2.0 * (1.0 - ubar) * x;
    return 2.0 * ubar + 1.0 - 2.0 * (ubar + 1.0) * x;
  };
  init.x_c = 0.5 + 0.25 * ubar;
  init.kink = 0.5;
  return init;
}

}  // namespace dgshock

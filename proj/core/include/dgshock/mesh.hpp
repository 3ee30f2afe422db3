#ifndef DGSHOCK_MESH_HPP_
#define DGSHOCK_MESH_HPP_

#include <functional>
#include <span>
#include <vector>

namespace dgshock {

/// Uniform 1D mesh of n_cells cells over [x_min, x_max].
struct Mesh1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 1;

  double h() const { return (x_max - x_min) / n_cells; }
  double left(int j) const { return x_min + j * h(); }
  double center(int j) const { return x_min + (j + 0.5) * h(); }
  /// Cell index containing x (clamped to the mesh).
  int locate(double x) const;
  /// Reference coordinate of x within cell j.
  double to_reference(int j, double x) const { return 2.0 * (x - center(j)) / h(); }
};

/// Modal Legendre coefficients U_j^l, stored row-major per cell. The cell
/// mean is the l = 0 coefficient.
struct ModalSolution {
  int p = 0;
  int n_cells = 0;
  std::vector<double> coeffs;

  ModalSolution() = default;
  ModalSolution(int p_, int n_cells_)
      : p(p_), n_cells(n_cells_), coeffs(static_cast<size_t>(n_cells_) * (p_ + 1), 0.0) {}

  double& at(int j, int l) { return coeffs[static_cast<size_t>(j) * (p + 1) + l]; }
  double at(int j, int l) const { return coeffs[static_cast<size_t>(j) * (p + 1) + l]; }
  std::span<double> cell(int j) {
    return {coeffs.data() + static_cast<size_t>(j) * (p + 1), static_cast<size_t>(p + 1)};
  }
  std::span<const double> cell(int j) const {
    return {coeffs.data() + static_cast<size_t>(j) * (p + 1), static_cast<size_t>(p + 1)};
  }
  double mean(int j) const { return at(j, 0); }
};

/// Dirichlet ghost states imposed weakly through the numerical flux.
struct BoundaryData {
  double left_state = 1.0;
  double right_state = -1.0;
};

/// L2 projection of u0 onto the modal space,
///   U_j^l = (2l+1)/2 * int_{-1}^1 u0(x_j + s h/2) L_l(s) ds,
/// with the integral split at any supplied kink abscissae so piecewise-smooth
/// data project exactly. Each smooth piece uses a Gauss rule of p+2 points.
ModalSolution project_initial(const std::function<double(double)>& u0, const Mesh1D& mesh, int p,
                              std::span<const double> kinks = {});

/// The two-piece linear steady-shock initial condition on [0,1] with mean
/// parameter ubar in (-2,2), plus the predicted shock location
/// x_c = 1/2 + ubar/4.
struct BurgersInitial {
  std::function<double(double)> u0;
  double x_c = 0.5;
  double kink = 0.5;
};

BurgersInitial burgers_initial(double ubar);

}  // namespace dgshock

#endif  // DGSHOCK_MESH_HPP_

#ifndef DGSHOCK_FLUX_HPP_
#define DGSHOCK_FLUX_HPP_

#include <array>
#include <functional>
#include <optional>

namespace dgshock {

/// Strictly convex, coercive physical flux together with its derivative and
/// sonic state (f'(sonic) = 0).
struct ConvexFlux {
  std::function<double(double)> f;
  std::function<double(double)> f_prime;
  double sonic = 0.0;
  std::array<double, 2> admissible{-4.0, 4.0};
};

/// Inviscid Burgers flux f(u) = u^2/2.
ConvexFlux burgers();

/// Stationary shock pair u_l > sonic > u_r with f(u_l) = f(u_r) = f_inf.
struct ShockPair {
  double u_l = 1.0;
  double u_r = -1.0;
  double f_inf = 0.5;
};

/// Validates the Rankine-Hugoniot and Lax conditions (1e-12). Throws
/// std::invalid_argument when they fail.
ShockPair make_shock_pair(const ConvexFlux& flux, double u_l, double u_r);

enum class NumericalFluxKind { Godunov, LocalLaxFriedrichs, EngquistOsher };

/// LLF stabilization constant. The default is the interface maximum
/// alpha = max(|f'(u-)|, |f'(u+)|); `scale` > 1 or a fixed value gives the
/// strictly dominating variants.
struct LlfAlpha {
  double scale = 1.0;
  std::optional<double> fixed;

  double value(const ConvexFlux& flux, double u_minus, double u_plus) const;
};

struct FluxOptions {
  LlfAlpha llf_alpha{};
};

double godunov(double u_minus, double u_plus, const ConvexFlux& flux);
double llf(double u_minus, double u_plus, const ConvexFlux& flux, const LlfAlpha& alpha = {});
double engquist_osher(double u_minus, double u_plus, const ConvexFlux& flux);

double numerical_flux(NumericalFluxKind kind, double u_minus, double u_plus,
                      const ConvexFlux& flux, const FluxOptions& opts = {});

/// Which one-sided branch to report at Godunov kinks
/// (f(u-) = f(u+) with u- >= sonic >= u+).
enum class KinkBranch { LeftUpwind, RightUpwind };

/// One-sided partial derivatives of the numerical flux. `kink` is set at the
/// Godunov non-differentiable locus; the value then follows `branch`.
/// LLF partials freeze alpha: ((f'(u-)+a)/2, (f'(u+)-a)/2).
struct FluxPartials {
  double d_minus = 0.0;
  double d_plus = 0.0;
  bool kink = false;
};

FluxPartials flux_partials(NumericalFluxKind kind, double u_minus, double u_plus,
                           const ConvexFlux& flux, const FluxOptions& opts = {},
                           KinkBranch branch = KinkBranch::LeftUpwind);

}  // namespace dgshock

#endif  // DGSHOCK_FLUX_HPP_

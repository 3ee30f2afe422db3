#include "dgshock/flux.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dgshock {

ConvexFlux burgers() {
  ConvexFlux flux;
  flux.f = [](double u) { return 0.5 * u * u; };
  flux.f_prime = [](double u) { return u; };
  flux.sonic = 0.0;
  flux.admissible = {-4.0, 4.0};
  return flux;
}

ShockPair make_shock_pair(const ConvexFlux& flux, double u_l, double u_r) {
  const double fl = flux.f(u_l);
  const double fr = flux.f(u_r);
  if (std::abs(fl - fr) > 1e-12) {
    throw std::invalid_argument("make_shock_pair: Rankine-Hugoniot f(u_l) = f(u_r) violated");
  }
  if (!(flux.f_prime(u_l) > 0.0 && flux.f_prime(u_r) < 0.0)) {
    throw std::invalid_argument("make_shock_pair: Lax condition f'(u_l) > 0 > f'(u_r) violated");
  }
  return ShockPair{u_l, u_r, 0.5 * (fl + fr)};
}

double LlfAlpha::value(const ConvexFlux& flux, double u_minus, double u_plus) const {
  if (fixed) return *fixed;
  return scale * std::max(std::abs(flux.f_prime(u_minus)), std::abs(flux.f_prime(u_plus)));
}

double godunov(double u_minus, double u_plus, const ConvexFlux& flux) {
  if (u_minus <= u_plus) {
    // min of f over [u-, u+]; convexity puts it at the clamped sonic state.
    const double v = std::clamp(flux.sonic, u_minus, u_plus);
    return flux.f(v);
  }
  return std::max(flux.f(u_minus), flux.f(u_plus));
}

double llf(double u_minus, double u_plus, const ConvexFlux& flux, const LlfAlpha& alpha) {
  const double a = alpha.value(flux, u_minus, u_plus);
  return 0.5 * (flux.f(u_minus) + flux.f(u_plus)) + 0.5 * a * (u_minus - u_plus);
}

double engquist_osher(double u_minus, double u_plus, const ConvexFlux& flux) {
  // Convex split form of (f(u-)+f(u+))/2 - (1/2) int_{u-}^{u+} |f'(v)| dv.
  return flux.f(std::max(u_minus, flux.sonic)) + flux.f(std::min(u_plus, flux.sonic)) -
         flux.f(flux.sonic);
}

double numerical_flux(NumericalFluxKind kind, double u_minus, double u_plus,
                      const ConvexFlux& flux, const FluxOptions& opts) {
  switch (kind) {
    case NumericalFluxKind::Godunov:
      return godunov(u_minus, u_plus, flux);
    case NumericalFluxKind::LocalLaxFriedrichs:
      return llf(u_minus, u_plus, flux, opts.llf_alpha);
    case NumericalFluxKind::EngquistOsher:
      return engquist_osher(u_minus, u_plus, flux);
  }
  throw std::logic_error("numerical_flux: unknown kind");
}

namespace {

FluxPartials godunov_partials(double u_minus, double u_plus, const ConvexFlux& flux,
                              KinkBranch branch) {
  FluxPartials d;
  const double sonic = flux.sonic;
  if (u_minus <= u_plus) {
    if (sonic <= u_minus) {
      d.d_minus = flux.f_prime(u_minus);
    } else if (sonic >= u_plus) {
      d.d_plus = flux.f_prime(u_plus);
    }
    // Sonic interior: flux constant f(sonic), both partials zero.
    return d;
  }
  const double fl = flux.f(u_minus);
  const double fr = flux.f(u_plus);
  if (fl > fr) {
    d.d_minus = flux.f_prime(u_minus);
  } else if (fl < fr) {
    d.d_plus = flux.f_prime(u_plus);
  } else {
    // f(u-) = f(u+) with u- > u+: the non-differentiable locus.
    d.kink = true;
    if (branch == KinkBranch::LeftUpwind) {
      d.d_minus = flux.f_prime(u_minus);
    } else {
      d.d_plus = flux.f_prime(u_plus);
    }
  }
  return d;
}

}  // namespace

FluxPartials flux_partials(NumericalFluxKind kind, double u_minus, double u_plus,
                           const ConvexFlux& flux, const FluxOptions& opts, KinkBranch branch) {
  switch (kind) {
    case NumericalFluxKind::Godunov:
      return godunov_partials(u_minus, u_plus, flux, branch);
    case NumericalFluxKind::LocalLaxFriedrichs: {
      const double a = opts.llf_alpha.value(flux, u_minus, u_plus);
      return FluxPartials{0.5 * (flux.f_prime(u_minus) + a), 0.5 * (flux.f_prime(u_plus) - a),
                          false};
    }
    case NumericalFluxKind::EngquistOsher: {
      FluxPartials d;
      if (u_minus > flux.sonic) d.d_minus = flux.f_prime(u_minus);
      if (u_plus < flux.sonic) d.d_plus = flux.f_prime(u_plus);
      return d;
    }
  }
  throw std::logic_error("flux_partials: unknown kind");
}

}  // namespace dgshock

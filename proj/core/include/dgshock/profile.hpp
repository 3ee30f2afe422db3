#ifndef DGSHOCK_PROFILE_HPP_
#define DGSHOCK_PROFILE_HPP_

#include <span>
#include <vector>

#include "dgshock/mesh.hpp"

namespace dgshock {

enum class ProfileBranch { P1, P2Left, P2Mid, P2Right, P3D1, P3D2, P3D3 };

const char* to_string(ProfileBranch branch);

/// Stationary Burgers shock-cell solution, coefficients normalized so the
/// physical DOFs are U_0^l = u_left * u[l] with u[0] = s_c.
struct ShockProfile {
  int p = 1;
  double s_c = 0.0;
  std::vector<double> u;  // size p+1
  ProfileBranch branch = ProfileBranch::P1;
  double u_left = 1.0;
  double u_right = -1.0;

  std::vector<double> physical_coeffs() const;
};

/// Shock-cell mean ((1+s_c) u_l + (1-s_c) u_r)/2.
double mean_dof(double s_c, double u_l, double u_r);

/// Closed-form profile for p in {1,2,3}. Branch boundaries and s_c = +-1 are
/// excluded; arguments within 1e-9 of them raise std::domain_error naming the
/// boundary.
ShockProfile profile(int p, double s_c, double u_left = 1.0);

/// Cubic-root intermediates of the p = 3 closed form.
struct P3Discriminants {
  double d1 = 0.0;     // sqrt(7776 s^6 - 10008 s^4 + 3359 s^2 - 56)
  double d1_sq = 0.0;  // the radicand itself (sign tells realness)
  double d2 = 0.0;     // 3 sqrt(3) d1 - 419 s^3 + 279 s
  double d3 = 0.0;     // 7 d2
  double d2_bar = 0.0;
  double d3_bar = 0.0;
};

P3Discriminants p3_discriminants(double s_c);

/// Positive root s_1 of d1_sq = 0 (closed form), approx 0.1326.
double p3_s1();

/// Strict inequalities on the shock-cell traces, normalized by u_left:
///   left face:  sum_l (-1)^l u_l > -1,  margin = sum + 1
///   right face: sum_l u_l < 1,          margin = 1 - sum
struct TraceCheck {
  bool left_ok = false;
  bool right_ok = false;
  double left_margin = 0.0;
  double right_margin = 0.0;

  bool ok() const { return left_ok && right_ok; }
};

TraceCheck check_trace_conditions(std::span<const double> u_normalized);
TraceCheck check_trace_conditions(const ShockProfile& prof);

/// Number of sign changes of u_h over `samples` uniformly spaced points in
/// the cell.
int entropy_sign_changes(const ShockProfile& prof, int samples);

/// Steady shock-cell residuals R^k (k = 0..p) of the normalized system with
/// face fluxes frozen to the upwind values f(u_L), f(u_R):
///   R^k = int f(u_h) d_s L_k ds - (1 - (-1)^k) f_inf, f = u^2/2, f_inf = 1/2.
std::vector<double> steady_shock_residual(std::span<const double> u_normalized);

/// One real root of the steady shock-cell system with u_0 fixed to s_c.
struct OracleRoot {
  std::vector<double> u;  // size p+1, u[0] = s_c
  TraceCheck trace;
  /// Canonical accepted root: trace conditions hold and u_1 <= 0 (solutions
  /// come in (u1,u2,u3) -> (-u1,u2,-u3) mirror pairs; the u_1 <= 0
  /// representative is the one the closed forms select).
  bool accepted = false;
};

/// Damped-Newton multistart enumeration of all real roots, deduplicated to
/// 1e-7. Independent of the closed forms in profile().
std::vector<OracleRoot> newton_oracle(int p, double s_c);

/// Composite steady state: u_left in cells < shock_cell, the profile in
/// shock_cell, u_right in cells > shock_cell.
ModalSolution compose_profile_solution(const Mesh1D& mesh, int shock_cell,
                                       const ShockProfile& prof);

}  // namespace dgshock

#endif  // DGSHOCK_PROFILE_HPP_

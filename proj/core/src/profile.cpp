#include "dgshock/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dgshock/legendre.hpp"

namespace dgshock {

namespace {

constexpr double kBoundaryTol = 1e-9;

void require_away_from(double s_c, double boundary, const char* name) {
  if (std::abs(s_c - boundary) < kBoundaryTol || std::abs(s_c + boundary) < kBoundaryTol) {
    throw std::domain_error(std::string("profile: s_c within 1e-9 of excluded point +-") + name);
  }
}

}  // namespace

const char* to_string(ProfileBranch branch) {
  switch (branch) {
    case ProfileBranch::P1: return "p1";
    case ProfileBranch::P2Left: return "p2-left";
    case ProfileBranch::P2Mid: return "p2-mid";
    case ProfileBranch::P2Right: return "p2-right";
    case ProfileBranch::P3D1: return "p3-d1";
    case ProfileBranch::P3D2: return "p3-d2";
    case ProfileBranch::P3D3: return "p3-d3";
  }
  return "?";
}

std::vector<double> ShockProfile::physical_coeffs() const {
  std::vector<double> c(u.size());
  for (size_t l = 0; l < u.size(); ++l) c[l] = u_left * u[l];
  return c;
}

double mean_dof(double s_c, double u_l, double u_r) {
  return 0.5 * ((1.0 + s_c) * u_l + (1.0 - s_c) * u_r);
}

P3Discriminants p3_discriminants(double s_c) {
  P3Discriminants d;
  const double s2 = s_c * s_c;
  d.d1_sq = ((7776.0 * s2 - 10008.0) * s2 + 3359.0) * s2 - 56.0;
  d.d1 = d.d1_sq > 0.0 ? std::sqrt(d.d1_sq) : 0.0;
  d.d2 = 3.0 * std::sqrt(3.0) * d.d1 - 419.0 * s_c * s2 + 279.0 * s_c;
  d.d3 = 7.0 * d.d2;
  d.d2_bar = -d.d2;
  d.d3_bar = -d.d3;
  return d;
}

double p3_s1() {
  const double a = 1373963.0 - 6687.0 * std::sqrt(15603.0);
  const double num = std::cbrt(2.0) * 8411.0 + std::pow(a, 2.0 / 3.0);
  const double den = std::cbrt(a) / std::cbrt(2.0);
  return std::sqrt(278.0 - num / den) / (18.0 * std::sqrt(2.0));
}

TraceCheck check_trace_conditions(std::span<const double> u) {
  const Traces t = traces(u);
  TraceCheck c;
  c.left_margin = t.right + 1.0;  // u at the cell's left face vs u_R/u_L = -1
  c.right_margin = 1.0 - t.left;  // u at the cell's right face vs 1
  c.left_ok = c.left_margin > 0.0;
  c.right_ok = c.right_margin > 0.0;
  return c;
}

TraceCheck check_trace_conditions(const ShockProfile& prof) {
  return check_trace_conditions(std::span<const double>(prof.u));
}

namespace {

// Two sign choices (u1, u3) and (-u1, -u3) solve the system; exactly one
// satisfies the strict trace inequalities on the cubic branches.
void select_p3_signs(double u1_abs, double g, std::vector<double>& u) {
  for (const double sign : {-1.0, +1.0}) {
    const double u1 = sign * u1_abs;
    u[1] = u1;
    u[3] = g * u1;
    if (check_trace_conditions(u).ok()) return;
  }
  throw std::domain_error("profile: no trace-valid sign choice (outside branch validity?)");
}

}  // namespace

ShockProfile profile(int p, double s_c, double u_left) {
  if (p < 1 || p > 3) throw std::domain_error("profile: closed forms cover p in {1,2,3}");
  if (!(s_c > -1.0 && s_c < 1.0)) throw std::domain_error("profile: s_c must lie in (-1,1)");
  require_away_from(s_c, 1.0, "1");

  ShockProfile prof;
  prof.p = p;
  prof.s_c = s_c;
  prof.u_left = u_left;
  prof.u_right = -u_left;
  prof.u.assign(static_cast<size_t>(p) + 1, 0.0);
  prof.u[0] = s_c;

  if (p == 1) {
    prof.branch = ProfileBranch::P1;
    prof.u[1] = -std::sqrt(3.0 * (1.0 - s_c * s_c));
    return prof;
  }

  if (p == 2) {
    require_away_from(s_c, 2.0 / 3.0, "2/3");
    if (s_c < -2.0 / 3.0) {
      prof.branch = ProfileBranch::P2Left;
      prof.u[2] = std::sqrt(5.0 * (1.0 - s_c * s_c));
    } else if (s_c > 2.0 / 3.0) {
      prof.branch = ProfileBranch::P2Right;
      prof.u[2] = -std::sqrt(5.0 * (1.0 - s_c * s_c));
    } else {
      prof.branch = ProfileBranch::P2Mid;
      prof.u[1] = -std::sqrt(3.0 * (1.0 - 2.25 * s_c * s_c));
      prof.u[2] = -2.5 * s_c;
    }
    return prof;
  }

  const double junction = std::sqrt(6.0 / 17.0);
  require_away_from(s_c, 1.0 / 6.0, "1/6");
  require_away_from(s_c, junction, "sqrt(6/17)");

  if (std::abs(s_c) < 1.0 / 6.0) {
    prof.branch = ProfileBranch::P3D1;
    prof.u[1] = -0.2 * std::sqrt(10.5) * std::sqrt(5.0 - 54.0 * s_c * s_c);
    prof.u[2] = -7.0 * s_c;
    prof.u[3] = -prof.u[1];
    return prof;
  }

  prof.branch = (s_c > -junction && s_c < -1.0 / 6.0) ? ProfileBranch::P3D2 : ProfileBranch::P3D3;

  // u2 is the single real root of
  //   4 u^3 + 7 s u^2 + (14 s^2 - 7/2) u + 7 s (1 - s^2) = 0
  // on these branches (d1_sq > 0). Cardano with odd real cube roots; the
  // pairing of the two radicals respects C1*C2 = -p/3.
  const P3Discriminants d = p3_discriminants(s_c);
  if (d.d1_sq <= 0.0) {
    throw std::domain_error("profile: discriminant vanished off the validity domain");
  }
  const double d2_tilde = 3.0 * std::sqrt(3.0) * d.d1 + 419.0 * s_c * s_c * s_c - 279.0 * s_c;
  const double u2 = (-7.0 * s_c + std::cbrt(7.0 * d2_tilde) + std::cbrt(-7.0 * d.d2)) / 12.0;

  const double g = -7.0 * (5.0 * s_c + 2.0 * u2) / (9.0 * u2);
  const double u1_sq =
      (1.0 - s_c * s_c - 0.2 * u2 * u2) / (1.0 / 3.0 + g * g / 7.0);
  if (u1_sq < -1e-12) {
    throw std::domain_error("profile: negative u1^2 off the validity domain");
  }
  prof.u[2] = u2;
  select_p3_signs(std::sqrt(std::max(u1_sq, 0.0)), g, prof.u);
  return prof;
}

int entropy_sign_changes(const ShockProfile& prof, int samples) {
  if (samples < 32) throw std::invalid_argument("entropy_sign_changes: samples >= 32 required");
  double amplitude = 0.0;
  std::vector<double> values(static_cast<size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const double s = -1.0 + 2.0 * i / (samples - 1);
    values[static_cast<size_t>(i)] = eval_modal(prof.u, s);
    amplitude = std::max(amplitude, std::abs(values[static_cast<size_t>(i)]));
  }
  const double tiny = 1e-13 * std::max(amplitude, 1.0);
  int changes = 0;
  double last_sign = 0.0;
  for (const double v : values) {
    if (std::abs(v) <= tiny) continue;
    const double sign = v > 0.0 ? 1.0 : -1.0;
    if (last_sign != 0.0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  return changes;
}

std::vector<double> steady_shock_residual(std::span<const double> u) {
  const int p = static_cast<int>(u.size()) - 1;
  const QuadratureRule rule = gauss_rule(p + 2);
  std::vector<double> r(static_cast<size_t>(p) + 1, 0.0);
  for (int q = 0; q < rule.size(); ++q) {
    const double s = rule.nodes[static_cast<size_t>(q)];
    const double uh = eval_modal(u, s);
    const double fw = 0.5 * uh * uh * rule.weights[static_cast<size_t>(q)];
    for (int k = 1; k <= p; ++k) r[static_cast<size_t>(k)] += fw * eval_legendre_deriv(k, s);
  }
  for (int k = 1; k <= p; k += 2) r[static_cast<size_t>(k)] -= 1.0;  // (1 - (-1)^k) f_inf
  return r;
}

namespace {

// Residuals and Jacobian of the k = 1..p system in the unknowns (u_1..u_p).
struct NewtonSystem {
  int p;
  QuadratureRule rule;

  explicit NewtonSystem(int p_) : p(p_), rule(gauss_rule(p_ + 2)) {}

  void eval(const std::vector<double>& u, std::vector<double>& f,
            std::vector<double>* jac) const {
    f.assign(static_cast<size_t>(p), 0.0);
    if (jac) jac->assign(static_cast<size_t>(p) * p, 0.0);
    for (int q = 0; q < rule.size(); ++q) {
      const double s = rule.nodes[static_cast<size_t>(q)];
      const double w = rule.weights[static_cast<size_t>(q)];
      double uh = 0.0;
      for (int l = 0; l <= p; ++l) uh += u[static_cast<size_t>(l)] * eval_legendre(l, s);
      for (int k = 1; k <= p; ++k) {
        const double dk = eval_legendre_deriv(k, s);
        f[static_cast<size_t>(k - 1)] += w * 0.5 * uh * uh * dk;
        if (jac) {
          for (int l = 1; l <= p; ++l) {
            (*jac)[static_cast<size_t>(k - 1) * p + (l - 1)] += w * uh * eval_legendre(l, s) * dk;
          }
        }
      }
    }
    for (int k = 1; k <= p; k += 2) f[static_cast<size_t>(k - 1)] -= 1.0;
  }
};

// Gaussian elimination with partial pivoting; returns false when singular.
bool solve_dense(std::vector<double> a, std::vector<double>& b, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[static_cast<size_t>(r) * n + col]) >
          std::abs(a[static_cast<size_t>(pivot) * n + col]))
        pivot = r;
    }
    if (std::abs(a[static_cast<size_t>(pivot) * n + col]) < 1e-14) return false;
    if (pivot != col) {
      for (int c = 0; c < n; ++c)
        std::swap(a[static_cast<size_t>(col) * n + c], a[static_cast<size_t>(pivot) * n + c]);
      std::swap(b[static_cast<size_t>(col)], b[static_cast<size_t>(pivot)]);
    }
    for (int r = col + 1; r < n; ++r) {
      const double factor = a[static_cast<size_t>(r) * n + col] / a[static_cast<size_t>(col) * n + col];
      for (int c = col; c < n; ++c)
        a[static_cast<size_t>(r) * n + c] -= factor * a[static_cast<size_t>(col) * n + c];
      b[static_cast<size_t>(r)] -= factor * b[static_cast<size_t>(col)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    double acc = b[static_cast<size_t>(r)];
    for (int c = r + 1; c < n; ++c) acc -= a[static_cast<size_t>(r) * n + c] * b[static_cast<size_t>(c)];
    b[static_cast<size_t>(r)] = acc / a[static_cast<size_t>(r) * n + r];
  }
  return true;
}

double norm_inf(const std::vector<double>& v) {
  double m = 0.0;
  for (const double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<OracleRoot> newton_oracle(int p, double s_c) {
  if (p < 1 || p > 3) throw std::domain_error("newton_oracle: p in {1,2,3}");
  if (!(s_c > -1.0 && s_c < 1.0)) throw std::domain_error("newton_oracle: s_c in (-1,1)");

  const NewtonSystem system(p);
  constexpr std::array<double, 5> lattice{-2.4, -1.2, 0.0, 1.2, 2.4};
  const int starts = static_cast<int>(std::pow(5.0, p));

  std::vector<std::vector<double>> roots;
  std::vector<double> f, f_trial, jac, step;

  for (int start = 0; start < starts; ++start) {
    std::vector<double> u(static_cast<size_t>(p) + 1, 0.0);
    u[0] = s_c;
    int code = start;
    for (int l = 1; l <= p; ++l) {
      u[static_cast<size_t>(l)] = lattice[static_cast<size_t>(code % 5)];
      code /= 5;
    }

    bool converged = false;
    system.eval(u, f, &jac);
    for (int it = 0; it < 200; ++it) {
      double fn = norm_inf(f);
      if (fn < 1e-12) {
        converged = true;
        break;
      }
      step = f;
      if (!solve_dense(jac, step, p)) break;
      double damping = 1.0;
      std::vector<double> u_trial = u;
      bool improved = false;
      for (int half = 0; half < 40; ++half) {
        for (int l = 1; l <= p; ++l)
          u_trial[static_cast<size_t>(l)] = u[static_cast<size_t>(l)] - damping * step[static_cast<size_t>(l - 1)];
        system.eval(u_trial, f_trial, nullptr);
        if (norm_inf(f_trial) < fn) {
          improved = true;
          break;
        }
        damping *= 0.5;
      }
      if (!improved) break;
      u = u_trial;
      system.eval(u, f, &jac);
    }
    if (!converged) continue;
    if (norm_inf(u) > 10.0) continue;

    bool duplicate = false;
    for (const std::vector<double>& r : roots) {
      double diff = 0.0;
      for (int l = 1; l <= p; ++l)
        diff = std::max(diff, std::abs(r[static_cast<size_t>(l)] - u[static_cast<size_t>(l)]));
      if (diff < 1e-7) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) roots.push_back(u);
  }

  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    for (size_t i = 1; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  });

  std::vector<OracleRoot> out;
  out.reserve(roots.size());
  for (std::vector<double>& r : roots) {
    OracleRoot root;
    root.trace = check_trace_conditions(r);
    root.accepted = root.trace.ok() && r[1] <= 1e-9;
    root.u = std::move(r);
    out.push_back(std::move(root));
  }
  return out;
}

ModalSolution compose_profile_solution(const Mesh1D& mesh, int shock_cell,
                                       const ShockProfile& prof) {
  ModalSolution sol(prof.p, mesh.n_cells);
  for (int j = 0; j < mesh.n_cells; ++j) {
    sol.at(j, 0) = (j < shock_cell) ? prof.u_left : prof.u_right;
  }
  const std::vector<double> phys = prof.physical_coeffs();
  for (int l = 0; l <= prof.p; ++l) sol.at(shock_cell, l) = phys[static_cast<size_t>(l)];
  return sol;
}

}  // namespace dgshock

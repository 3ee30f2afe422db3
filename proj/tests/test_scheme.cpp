#include <cmath>
#include <random>

#include <doctest.h>

#include "dgshock/legendre.hpp"
#include "dgshock/mesh.hpp"
#include "dgshock/profile.hpp"
#include "dgshock/scheme.hpp"

using namespace dgshock;

namespace {

DgScheme make_scheme(int p, int n_cells, NumericalFluxKind kind = NumericalFluxKind::Godunov) {
  return DgScheme(Mesh1D{0.0, 1.0, n_cells}, p, kind, burgers(), BoundaryData{1.0, -1.0});
}

ModalSolution random_state(int p, int n_cells, unsigned seed, double amplitude = 0.5) {
  ModalSolution sol(p, n_cells);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-amplitude, amplitude);
  for (double& c : sol.coeffs) c = dist(rng);
  return sol;
}

// Independent residual evaluation: fresh quadrature of higher order, direct
// Legendre calls, no shared tables with DgScheme.
std::vector<double> residual_oracle(const DgScheme& scheme, const ModalSolution& sol, int j) {
  const int p = sol.p;
  const QuadratureRule rule = gauss_rule(p + 4);
  std::vector<double> r(p + 1, 0.0);
  for (int q = 0; q < rule.size(); ++q) {
    const double s = rule.nodes[q];
    const double u = eval_modal(sol.cell(j), s);
    for (int k = 1; k <= p; ++k) {
      r[k] += rule.weights[q] * scheme.flux().f(u) * eval_legendre_deriv(k, s);
    }
  }
  const double hl = scheme.face_flux(sol, j);
  const double hr = scheme.face_flux(sol, j + 1);
  for (int k = 0; k <= p; ++k) r[k] += -hr + (k % 2 == 0 ? 1.0 : -1.0) * hl;
  return r;
}

}  // namespace

TEST_CASE("projection of constants") {
  const Mesh1D mesh{0.0, 1.0, 8};
  const ModalSolution sol = project_initial([](double) { return 2.5; }, mesh, 3);
  for (int j = 0; j < 8; ++j) {
    CHECK(sol.at(j, 0) == doctest::Approx(2.5).epsilon(1e-14));
    for (int l = 1; l <= 3; ++l) CHECK(std::abs(sol.at(j, l)) < 1e-14);
  }
}

TEST_CASE("projection of u0(x)=x on one cell [0,h]") {
  const double h = 0.3;
  const Mesh1D mesh{0.0, h, 1};
  const ModalSolution sol = project_initial([](double x) { return x; }, mesh, 2);
  CHECK(sol.at(0, 0) == doctest::Approx(h / 2).epsilon(1e-14));
  CHECK(sol.at(0, 1) == doctest::Approx(h / 2).epsilon(1e-14));
  CHECK(std::abs(sol.at(0, 2)) < 1e-15);
}

TEST_CASE("projection of the steady-shock initial data has exact cell means") {
  const double ubar = 0.1;
  const BurgersInitial init = burgers_initial(ubar);
  const Mesh1D mesh{0.0, 1.0, 21};  // odd count: the kink falls inside a cell
  const std::vector<double> kinks{init.kink};
  const ModalSolution sol = project_initial(init.u0, mesh, 2, kinks);
  // Exact mean via the antiderivative of each linear piece.
  auto anti = [ubar](double x) {
    if (x <= 0.5) return x - (1.0 - ubar) * x * x;
    const double at_half = 0.5 - (1.0 - ubar) * 0.25;
    return at_half + (2.0 * ubar + 1.0) * (x - 0.5) - (ubar + 1.0) * (x * x - 0.25);
  };
  for (int j = 0; j < mesh.n_cells; ++j) {
    const double a = mesh.left(j);
    const double b = mesh.left(j + 1);
    const double mean = (anti(b) - anti(a)) / mesh.h();
    CHECK(sol.at(j, 0) == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("burgers initial condition") {
  CHECK(burgers_initial(0.0).x_c == doctest::Approx(0.5));
  CHECK(burgers_initial(0.1).x_c == doctest::Approx(0.525));
  for (const double ubar : {-1.5, -0.3, 0.0, 0.4, 1.9}) {
    const BurgersInitial init = burgers_initial(ubar);
    CHECK(init.u0(0.0) == doctest::Approx(1.0));
    CHECK(init.u0(1.0) == doctest::Approx(-1.0));
  }
  CHECK_THROWS(burgers_initial(2.0));
  CHECK_THROWS(burgers_initial(-2.5));
}

TEST_CASE("uniform states have zero residual") {
  for (int p : {0, 1, 2, 3}) {
    DgScheme scheme(Mesh1D{0.0, 1.0, 10}, p, NumericalFluxKind::Godunov, burgers(),
                    BoundaryData{0.7, 0.7});
    ModalSolution sol(p, 10);
    for (int j = 0; j < 10; ++j) sol.at(j, 0) = 0.7;
    const auto res = scheme.residual_all(sol);
    CHECK(res.norm < 1e-14);
  }
}

TEST_CASE("closed-form profile embedded in uniform states is steady") {
  for (int p : {1, 2, 3}) {
    for (double sc : {-0.45, 0.0, 0.35}) {
      const ShockProfile prof = profile(p, sc);
      const Mesh1D mesh{0.0, 1.0, 20};
      const ModalSolution sol = compose_profile_solution(mesh, 10, prof);
      DgScheme scheme(mesh, p, NumericalFluxKind::Godunov, burgers(), BoundaryData{1.0, -1.0});
      const auto res = scheme.residual_all(sol);
      CHECK(res.norm * mesh.h() < 1e-10);  // max_k |R_j^k| itself
      const auto shock_res = scheme.cell_residual(sol, 10);
      for (int k = 0; k <= p; ++k) CHECK(std::abs(shock_res[k]) < 1e-10);
    }
  }
}

TEST_CASE("engquist-osher shares the closed-form profiles while traces straddle the sonic point") {
  // EO reduces to the Godunov flux at the shock-cell faces as long as the
  // inner traces satisfy u(+left face) >= 0 >= u(-right face); this holds up
  // to |s_c| = sqrt(3)/2 for p=1 and sqrt(3)/3 for p=2.
  const Mesh1D mesh{0.0, 1.0, 20};
  const BoundaryData bc{1.0, -1.0};
  struct Range {
    int p;
    double limit;
  };
  for (const Range range : {Range{1, std::sqrt(3.0) / 2.0}, Range{2, std::sqrt(3.0) / 3.0}}) {
    DgScheme eo(mesh, range.p, NumericalFluxKind::EngquistOsher, burgers(), bc);
    for (const double frac : {-0.9, -0.4, 0.0, 0.5, 0.9}) {
      const double sc = frac * (range.limit - 1e-6);
      const ModalSolution sol = compose_profile_solution(mesh, 10, profile(range.p, sc));
      CHECK(eo.residual_all(sol).norm * mesh.h() < 1e-10);
    }
    // Beyond the straddle range the EO face fluxes differ and the Godunov
    // profile is no longer steady.
    const ModalSolution beyond =
        compose_profile_solution(mesh, 10, profile(range.p, range.limit + 0.05));
    CHECK(eo.residual_all(beyond).norm * mesh.h() > 1e-6);
  }
}

TEST_CASE("engquist-osher time marching reaches the same profile at s_c = 0") {
  BurgersSteadyConfig cfg;
  cfg.p = 2;
  cfg.kind = NumericalFluxKind::EngquistOsher;
  cfg.ubar = 0.1;
  const BurgersSteadyResult result = run_burgers_steady(cfg);
  REQUIRE(result.report.converged);
  const ShockProfile prof = profile(2, 0.0);
  for (int l = 0; l <= 2; ++l) {
    CHECK(result.report.solution.at(10, l) == doctest::Approx(prof.u[l]).epsilon(1e-6).scale(1.0));
  }
}

TEST_CASE("cell residual matches an independent quadrature assembly") {
  const DgScheme scheme = make_scheme(3, 6);
  ModalSolution sol = random_state(3, 6, 41);
  for (int j = 0; j < 6; ++j) {
    const std::vector<double> got = scheme.cell_residual(sol, j);
    const std::vector<double> want = residual_oracle(scheme, sol, j);
    for (int k = 0; k <= 3; ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-12));
  }
}

TEST_CASE("residual norm is the max over cells scaled by 1/h") {
  const DgScheme scheme = make_scheme(2, 5);
  const ModalSolution sol = random_state(2, 5, 43);
  const auto res = scheme.residual_all(sol);
  double max_abs = 0.0;
  for (const double v : res.values) max_abs = std::max(max_abs, std::abs(v));
  CHECK(res.norm == doctest::Approx(max_abs / scheme.mesh().h()));

  ModalSolution zero(2, 5);
  DgScheme zero_scheme(Mesh1D{0.0, 1.0, 5}, 2, NumericalFluxKind::Godunov, burgers(),
                       BoundaryData{0.0, 0.0});
  CHECK(zero_scheme.residual_all(zero).norm == 0.0);
}

TEST_CASE("compute_dt follows the CFL rule") {
  const DgScheme scheme = make_scheme(1, 20);
  ModalSolution sol(1, 20);
  for (int j = 0; j < 20; ++j) sol.at(j, 0) = 1.0;
  CHECK(scheme.compute_dt(sol) == doctest::Approx((1.0 / 3.0) * 0.05).epsilon(1e-13));

  ModalSolution sol2(1, 20);
  for (int j = 0; j < 20; ++j) sol2.at(j, 0) = 2.0;
  CHECK(scheme.compute_dt(sol2) == doctest::Approx(0.5 * scheme.compute_dt(sol)).epsilon(1e-13));

  const DgScheme scheme2 = make_scheme(2, 20);
  ModalSolution sol3(2, 20);
  for (int j = 0; j < 20; ++j) sol3.at(j, 0) = 1.0;
  CHECK(scheme2.compute_dt(sol3) == doctest::Approx(0.2 * 0.05).epsilon(1e-13));
}

TEST_CASE("euler step: fixed point, hand update, dt linearity") {
  const DgScheme scheme = make_scheme(2, 20);
  const ShockProfile prof = profile(2, 0.2);
  const ModalSolution steady = compose_profile_solution(scheme.mesh(), 10, prof);
  const ModalSolution stepped = scheme.euler_step(steady, 1e-3);
  for (size_t i = 0; i < steady.coeffs.size(); ++i) {
    CHECK(std::abs(stepped.coeffs[i] - steady.coeffs[i]) < 1e-12);
  }

  // Hand update against the residual definition.
  ModalSolution bumped = steady;
  bumped.at(4, 1) += 0.01;
  const double dt = 2e-3;
  const auto res = scheme.residual_all(bumped);
  const ModalSolution after = scheme.euler_step(bumped, dt);
  for (int j = 0; j < 20; ++j) {
    for (int k = 0; k <= 2; ++k) {
      const double expected =
          bumped.at(j, k) + (2 * k + 1) * dt / scheme.mesh().h() * res.values[j * 3 + k];
      CHECK(after.at(j, k) == doctest::Approx(expected).epsilon(1e-13));
    }
  }

  // The increment is linear in dt.
  const ModalSolution half = scheme.euler_step(bumped, 0.5 * dt);
  for (size_t i = 0; i < bumped.coeffs.size(); ++i) {
    const double inc_full = after.coeffs[i] - bumped.coeffs[i];
    const double inc_half = half.coeffs[i] - bumped.coeffs[i];
    CHECK(inc_full == doctest::Approx(2.0 * inc_half).epsilon(1e-12).scale(1.0));
  }
}

TEST_CASE("rk2 and rk3 keep steady states fixed") {
  const DgScheme scheme = make_scheme(3, 20);
  const ShockProfile prof = profile(3, 0.05);
  const ModalSolution steady = compose_profile_solution(scheme.mesh(), 10, prof);
  for (const int order : {2, 3}) {
    const ModalSolution stepped = scheme.step(steady, 1e-3, order);
    for (size_t i = 0; i < steady.coeffs.size(); ++i) {
      CHECK(std::abs(stepped.coeffs[i] - steady.coeffs[i]) < 1e-12);
    }
  }
}

TEST_CASE("rk2 equals the Heun average of Euler stages") {
  const DgScheme scheme = make_scheme(2, 8);
  const ModalSolution sol = random_state(2, 8, 47, 0.3);
  const double dt = 1e-3;
  const ModalSolution rk2 = scheme.ssp_rk2_step(sol, dt);
  const ModalSolution e1 = scheme.euler_step(sol, dt);
  const ModalSolution e2 = scheme.euler_step(e1, dt);
  for (size_t i = 0; i < sol.coeffs.size(); ++i) {
    CHECK(rk2.coeffs[i] == doctest::Approx(0.5 * (sol.coeffs[i] + e2.coeffs[i])).epsilon(1e-14));
  }
}

TEST_CASE("global conservation under time stepping") {
  // With matching boundary data, the sum of cell means is invariant.
  const DgScheme scheme = make_scheme(2, 20);
  const BurgersInitial init = burgers_initial(0.1);
  const std::vector<double> kinks{init.kink};
  ModalSolution sol = project_initial(init.u0, scheme.mesh(), 2, kinks);
  double mass = 0.0;
  for (int j = 0; j < 20; ++j) mass += sol.mean(j);
  for (int step = 0; step < 50; ++step) {
    const double dt = scheme.compute_dt(sol);
    sol = scheme.ssp_rk3_step(sol, dt);
    double mass_now = 0.0;
    for (int j = 0; j < 20; ++j) mass_now += sol.mean(j);
    CHECK(mass_now == doctest::Approx(mass).epsilon(1e-12));
    mass = mass_now;
  }
}

TEST_CASE("converged runs satisfy local conservation") {
  BurgersSteadyConfig cfg;
  cfg.p = 2;
  cfg.ubar = 0.1;
  const BurgersSteadyResult result = run_burgers_steady(cfg);
  REQUIRE(result.report.converged);
  const DgScheme scheme = make_scheme(2, 20);
  const ModalSolution& sol = result.report.solution;
  const double f0 = scheme.face_flux(sol, 0);
  for (int face = 1; face <= 20; ++face) {
    CHECK(scheme.face_flux(sol, face) == doctest::Approx(f0).epsilon(1e-8));
  }
}

TEST_CASE("near-zero residual states are integrator fixed points") {
  BurgersSteadyConfig cfg;
  cfg.p = 1;
  cfg.ubar = 0.1;
  cfg.tol = 1e-13;
  const BurgersSteadyResult result = run_burgers_steady(cfg);
  REQUIRE(result.report.converged);
  const DgScheme scheme = make_scheme(1, 20);
  const double dt = scheme.compute_dt(result.report.solution);
  for (const int order : {1, 2, 3}) {
    const ModalSolution stepped = scheme.step(result.report.solution, dt, order);
    for (size_t i = 0; i < stepped.coeffs.size(); ++i) {
      CHECK(std::abs(stepped.coeffs[i] - result.report.solution.coeffs[i]) < 1e-11);
    }
  }
}

TEST_CASE("steady driver reproduces the analytic shock cell") {
  BurgersSteadyConfig cfg;
  cfg.p = 1;
  cfg.n_cells = 20;
  cfg.ubar = 0.1;
  const BurgersSteadyResult result = run_burgers_steady(cfg);
  CHECK(result.report.converged);
  CHECK(result.shock_cell == 10);
  CHECK(result.s_c == doctest::Approx(0.0).epsilon(1e-12));
  const ShockProfile prof = profile(1, 0.0);
  for (int l = 0; l <= 1; ++l) {
    CHECK(result.report.solution.at(10, l) == doctest::Approx(prof.u[l]).epsilon(1e-6).scale(1.0));
  }
  // Uniform regions collapse to the exact supersonic/subsonic states.
  for (int j = 0; j < 20; ++j) {
    if (j == 10) continue;
    CHECK(std::abs(result.report.solution.at(j, 0) - (j < 10 ? 1.0 : -1.0)) < 1e-8);
    CHECK(std::abs(result.report.solution.at(j, 1)) < 1e-8);
  }
  // Shock-cell mean equals the conservation value.
  CHECK(result.report.solution.at(10, 0) ==
        doctest::Approx(mean_dof(result.s_c, 1.0, -1.0)).epsilon(1e-8).scale(1.0));
}

TEST_CASE("interface shock at s_c=+1 stalls for p=2 within 50k steps") {
  BurgersSteadyConfig cfg;
  cfg.p = 2;
  cfg.ubar = 0.2;  // x_c = 0.55, right face of the landing cell
  cfg.tol = 1e-10;
  cfg.max_steps = 50000;
  const BurgersSteadyResult result = run_burgers_steady(cfg);
  CHECK(!result.report.converged);
  CHECK(result.report.steps == 50000);
  CHECK(static_cast<long>(result.report.residual_history.size()) == result.report.steps);
}

TEST_CASE("infinite tolerance returns immediately") {
  BurgersSteadyConfig cfg;
  cfg.p = 1;
  cfg.ubar = 0.1;
  cfg.tol = std::numeric_limits<double>::infinity();
  const BurgersSteadyResult result = run_burgers_steady(cfg);
  CHECK(result.report.converged);
  CHECK(result.report.steps == 0);
  CHECK(result.report.residual_history.empty());
}

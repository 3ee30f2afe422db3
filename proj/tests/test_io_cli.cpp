#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "dgshock/io.hpp"
#include "dgshock/legendre.hpp"
#include "dgshock/mesh.hpp"
#include "dgshock/profile.hpp"
#include "dgshock/scheme.hpp"

using namespace dgshock;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(DGSHOCK_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string tmp_path(const std::string& name) { return "/tmp/dgshock_test_" + name; }

}  // namespace

TEST_CASE("float formatting round-trips") {
  for (const double v : {0.1, -1.0 / 3.0, 1e-300, 7.25, 123456.789012345678}) {
    CHECK(std::stod(format_double(v)) == v);
  }
}

TEST_CASE("solution csv round trip") {
  const Mesh1D mesh{0.0, 1.0, 20};
  const ModalSolution sol = compose_profile_solution(mesh, 10, profile(2, 0.35));
  const std::string path = tmp_path("roundtrip.csv");
  save_solution_csv(path, mesh, sol);
  const LoadedSolution loaded = load_solution_csv(path);
  CHECK(loaded.mesh.n_cells == 20);
  CHECK(loaded.mesh.x_min == 0.0);
  CHECK(loaded.mesh.x_max == 1.0);
  REQUIRE(loaded.solution.coeffs.size() == sol.coeffs.size());
  for (size_t i = 0; i < sol.coeffs.size(); ++i) {
    CHECK(loaded.solution.coeffs[i] == sol.coeffs[i]);  // bit-exact
  }
}

TEST_CASE("cli profile sweep reproduces the p=1 closed form") {
  const std::string out = tmp_path("profile_p1.csv");
  REQUIRE(run_cli("profile --p 1 --count 25 --out " + out) == 0);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "p,s_c,branch,u0,u1,face_left_value,face_right_value,margin_left,margin_right,"
        "sign_changes");
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');  // p
    std::getline(ss, field, ',');
    const double sc = std::stod(field);
    std::getline(ss, field, ',');  // branch
    std::getline(ss, field, ',');  // u0
    CHECK(std::stod(field) == doctest::Approx(sc).epsilon(1e-14));
    std::getline(ss, field, ',');  // u1
    CHECK(std::stod(field) == doctest::Approx(-std::sqrt(3.0 * (1.0 - sc * sc))).epsilon(1e-12));
    ++rows;
  }
  CHECK(rows == 25);
}

TEST_CASE("cli profile emits branch labels switching at 2/3 for p=2") {
  const std::string out = tmp_path("profile_p2.csv");
  REQUIRE(run_cli("profile --p 2 --count 40 --out " + out) == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);  // header
  bool left = false, mid = false, right = false;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string field, branch;
    std::getline(ss, field, ',');
    std::getline(ss, field, ',');
    const double sc = std::stod(field);
    std::getline(ss, branch, ',');
    if (sc < -2.0 / 3.0) {
      CHECK(branch == "p2-left");
      left = true;
    } else if (sc > 2.0 / 3.0) {
      CHECK(branch == "p2-right");
      right = true;
    } else {
      CHECK(branch == "p2-mid");
      mid = true;
    }
  }
  CHECK(left);
  CHECK(mid);
  CHECK(right);
}

TEST_CASE("cli run round-trips through the dump and cross-checks the profile") {
  const std::string out = tmp_path("run_p2.csv");
  REQUIRE(run_cli("run --p 2 --flux godunov --ubar 0.1 --tol 1e-12 --require-converged --out " +
                  out) == 0);
  const LoadedSolution loaded = load_solution_csv(out);
  DgScheme scheme(loaded.mesh, loaded.solution.p, NumericalFluxKind::Godunov, burgers(),
                  BoundaryData{1.0, -1.0});
  CHECK(scheme.residual_all(loaded.solution).norm < 1e-11);

  // Final shock-cell coefficients match the closed form at s_c = 0.
  const ShockProfile prof = profile(2, 0.0);
  for (int l = 0; l <= 2; ++l) {
    CHECK(loaded.solution.at(10, l) == doctest::Approx(prof.u[l]).epsilon(1e-6).scale(1.0));
  }

  // History and samples files exist alongside.
  CHECK(!slurp(tmp_path("run_p2_history.csv")).empty());
  CHECK(!slurp(tmp_path("run_p2_samples.csv")).empty());
}

TEST_CASE("cli run with --max-steps 0 dumps the projected initial condition") {
  const std::string out = tmp_path("run_ic.csv");
  REQUIRE(run_cli("run --p 1 --ubar 0.1 --max-steps 0 --out " + out) == 0);
  const LoadedSolution loaded = load_solution_csv(out);
  const BurgersInitial init = burgers_initial(0.1);
  const std::vector<double> kinks{init.kink};
  const ModalSolution expected = project_initial(init.u0, loaded.mesh, 1, kinks);
  for (size_t i = 0; i < expected.coeffs.size(); ++i) {
    CHECK(loaded.solution.coeffs[i] == doctest::Approx(expected.coeffs[i]).epsilon(1e-14));
  }
}

TEST_CASE("cli outputs are deterministic") {
  const std::string a = tmp_path("det_a.csv");
  const std::string b = tmp_path("det_b.csv");
  REQUIRE(run_cli("profile --p 3 --count 50 --out " + a) == 0);
  REQUIRE(run_cli("profile --p 3 --count 50 --out " + b) == 0);
  CHECK(slurp(a) == slurp(b));

  const std::string ra = tmp_path("det_run_a.csv");
  const std::string rb = tmp_path("det_run_b.csv");
  REQUIRE(run_cli("run --p 2 --ubar 0.1 --out " + ra) == 0);
  REQUIRE(run_cli("run --p 2 --ubar 0.1 --out " + rb) == 0);
  CHECK(slurp(ra) == slurp(rb));
}

TEST_CASE("cli spectrum json contains the uniform-region pair") {
  const std::string out = tmp_path("spectrum.json");
  REQUIRE(run_cli("spectrum --p 1 --flux godunov --sc 0.5 --rk 1 --format json --out " + out) ==
          0);
  const std::string text = slurp(out);
  CHECK(text.find("\"spectral_radius\"") != std::string::npos);
  CHECK(text.find("\"eigenvalues\"") != std::string::npos);
  CHECK(text.find("\"stable\"") != std::string::npos);
}

TEST_CASE("cli decay table has consistent signs and decaying magnitudes") {
  const std::string out = tmp_path("decay.csv");
  REQUIRE(run_cli("decay-table --p 1 --flux llf --sc -0.6 --cfl-scale 0.75 --tol 1e-12 --out " +
                  out) == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);  // header
  double prev_mag = 1e300;
  int rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');  // p
    std::getline(ss, field, ',');  // cell
    std::getline(ss, field, ',');
    const double um = std::stod(field);
    std::getline(ss, field, ',');
    const double up = std::stod(field);
    CHECK(um * up > 0.0);  // signs agree at each interface
    CHECK(std::abs(up) < prev_mag);
    prev_mag = std::abs(up);
    ++rows;
  }
  CHECK(rows == 3);
}

TEST_CASE("cli spectrum from a computed steady state") {
  const std::string out = tmp_path("spectrum_run.json");
  REQUIRE(run_cli("spectrum --p 1 --flux godunov --ubar 0.1 --rk 3 --format json --out " + out) ==
          0);
  const std::string text = slurp(out);
  CHECK(text.find("\"stable\": true") != std::string::npos);
  CHECK(text.find("\"s_c_used\"") != std::string::npos);
}

TEST_CASE("cli profile json document shape") {
  const std::string out = tmp_path("profile.json");
  REQUIRE(run_cli("profile --p 2 --count 5 --format json --out " + out) == 0);
  const std::string text = slurp(out);
  CHECK(text.find("\"spec\"") != std::string::npos);
  CHECK(text.find("\"results\"") != std::string::npos);
  CHECK(text.find("\"branch\"") != std::string::npos);
  CHECK(text.find("\"margin_left\"") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run_cli("run --p 1 --ubar 5.0 --out " + tmp_path("bad.csv")) == 2);  // bad spec
  CHECK(run_cli("bogus-subcommand") == 2);
  CHECK(run_cli("run --p 2 --ubar 0.2 --max-steps 200 --tol 1e-12 --require-converged --out " +
                tmp_path("nc.csv")) == 3);  // run-level failure
  CHECK(run_cli("decay-table --p 2 --flux llf --sc 0.95 --max-steps 200 --out " +
                tmp_path("nc2.csv")) == 3);
}

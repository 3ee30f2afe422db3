#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgshock/io.hpp"
#include "dgshock/legendre.hpp"
#include "dgshock/profile.hpp"
#include "dgshock/scheme.hpp"
#include "dgshock/stability.hpp"
#include "dgshock/svv.hpp"

namespace {

using json = nlohmann::json;
using namespace dgshock;

constexpr int kExitBadSpec = 2;
constexpr int kExitRunFailure = 3;

struct CommonOpts {
  int p = 1;
  int cells = 20;
  std::string flux = "godunov";
  std::optional<double> ubar;
  std::optional<double> sc;
  int rk = 3;
  double cfl_scale = 1.0;
  long max_steps = 200000;
  double tol = 1e-12;
  bool svv = false;
  std::optional<double> svv_eps;
  double detector_threshold = 1.0;
  std::string out;
  std::string format = "csv";
  bool require_converged = false;
};

NumericalFluxKind parse_flux(const std::string& name) {
  if (name == "godunov") return NumericalFluxKind::Godunov;
  if (name == "llf") return NumericalFluxKind::LocalLaxFriedrichs;
  if (name == "osher") return NumericalFluxKind::EngquistOsher;
  throw CLI::ValidationError("--flux", "expected godunov|llf|osher");
}

// Shock position s in the central shock cell maps back to the ubar that
// lands there: x_c = center(j_c) + s h/2, ubar = 4 (x_c - 1/2).
double sc_to_ubar(double sc, int cells) {
  const Mesh1D mesh{0.0, 1.0, cells};
  const int j_c = mesh.locate(0.5 + 0.5 * mesh.h());
  const double x_c = mesh.center(j_c) + 0.5 * sc * mesh.h();
  return 4.0 * (x_c - 0.5);
}

std::string replace_extension(const std::string& path, const std::string& tag,
                              const std::string& ext) {
  const size_t dot = path.find_last_of('.');
  const std::string stem = (dot == std::string::npos) ? path : path.substr(0, dot);
  return stem + tag + ext;
}

json spec_json(const CommonOpts& o, const std::string& command) {
  json spec;
  spec["command"] = command;
  spec["p"] = o.p;
  spec["cells"] = o.cells;
  spec["flux"] = o.flux;
  if (o.ubar) spec["ubar"] = *o.ubar;
  if (o.sc) spec["sc"] = *o.sc;
  spec["rk"] = o.rk;
  spec["cfl_scale"] = o.cfl_scale;
  spec["max_steps"] = o.max_steps;
  spec["tol"] = o.tol;
  spec["svv"] = o.svv;
  if (o.svv_eps) spec["svv_eps"] = *o.svv_eps;
  spec["detector_threshold"] = o.detector_threshold;
  spec["format"] = o.format;
  return spec;
}

int cmd_profile(const CommonOpts& o, double sc_min, double sc_max, int count) {
  if (o.p < 1 || o.p > 3) {
    std::cerr << "profile: --p must be 1, 2 or 3\n";
    return kExitBadSpec;
  }
  std::vector<double> points;
  if (o.sc) {
    points.push_back(*o.sc);
  } else {
    for (int i = 0; i < count; ++i) {
      points.push_back(sc_min + (sc_max - sc_min) * (i + 0.5) / count);
    }
  }

  struct Row {
    double sc;
    const char* branch;
    std::vector<double> u;
    Traces tr;
    TraceCheck check;
    int sign_changes;
    bool ok;
  };
  std::vector<Row> rows;
  for (const double sc : points) {
    Row row;
    row.sc = sc;
    try {
      const ShockProfile prof = profile(o.p, sc);
      row.branch = to_string(prof.branch);
      row.u = prof.u;
      row.tr = traces(prof.u);
      row.check = check_trace_conditions(prof);
      row.sign_changes = entropy_sign_changes(prof, 256);
      row.ok = true;
    } catch (const std::domain_error&) {
      if (o.sc) throw;  // a single requested point must not fail silently
      row.ok = false;   // sweep: excluded point, skipped in the output
    }
    if (row.ok) rows.push_back(std::move(row));
  }

  if (o.format == "json") {
    json results = json::array();
    for (const Row& row : rows) {
      json r;
      r["s_c"] = row.sc;
      r["branch"] = row.branch;
      r["u"] = row.u;
      r["face_left_value"] = row.tr.right;
      r["face_right_value"] = row.tr.left;
      r["margin_left"] = row.check.left_margin;
      r["margin_right"] = row.check.right_margin;
      r["sign_changes"] = row.sign_changes;
      results.push_back(std::move(r));
    }
    json doc;
    doc["spec"] = spec_json(o, "profile");
    doc["results"] = results;
    std::ofstream out(o.out);
    if (!out) return kExitRunFailure;
    out << doc.dump(2) << "\n";
    return 0;
  }

  std::ofstream out(o.out);
  if (!out) return kExitRunFailure;
  out << "p,s_c,branch";
  for (int l = 0; l <= o.p; ++l) out << ",u" << l;
  out << ",face_left_value,face_right_value,margin_left,margin_right,sign_changes\n";
  for (const Row& row : rows) {
    out << o.p << "," << format_double(row.sc) << "," << row.branch;
    for (int l = 0; l <= o.p; ++l) out << "," << format_double(row.u[static_cast<size_t>(l)]);
    out << "," << format_double(row.tr.right) << "," << format_double(row.tr.left) << ","
        << format_double(row.check.left_margin) << "," << format_double(row.check.right_margin)
        << "," << row.sign_changes << "\n";
  }
  return 0;
}

BurgersSteadyConfig steady_config(const CommonOpts& o) {
  BurgersSteadyConfig cfg;
  cfg.p = o.p;
  cfg.n_cells = o.cells;
  cfg.kind = parse_flux(o.flux);
  cfg.ubar = o.ubar ? *o.ubar : sc_to_ubar(o.sc.value_or(0.0), o.cells);
  cfg.rk_order = o.rk;
  cfg.cfl_scale = o.cfl_scale;
  cfg.max_steps = o.max_steps;
  cfg.tol = o.tol;
  if (o.svv) {
    SvvConfig svv;
    svv.epsilon = o.svv_eps;
    svv.detector_threshold = o.detector_threshold;
    cfg.svv = svv;
  }
  return cfg;
}

int cmd_run(const CommonOpts& o) {
  BurgersSteadyConfig cfg = steady_config(o);
  const Mesh1D mesh{0.0, 1.0, cfg.n_cells};
  const ShockPlacement placement = shock_placement(cfg.ubar, mesh);
  std::cout << "run: ubar=" << format_double(cfg.ubar) << " x_c=" << format_double(placement.x_c)
            << " landing cell=" << placement.cell << " s_c=" << format_double(placement.s_c)
            << "\n";

  BurgersSteadyResult result;
  if (o.max_steps == 0) {
    const BurgersInitial init = burgers_initial(cfg.ubar);
    const std::vector<double> kinks{init.kink};
    result.report.solution = project_initial(init.u0, mesh, cfg.p, kinks);
    result.report.converged = false;
    result.shock_cell = placement.cell;
    result.s_c = placement.s_c;
  } else {
    result = run_burgers_steady(cfg);
  }

  std::cout << "run: converged=" << (result.report.converged ? "true" : "false")
            << " steps=" << result.report.steps
            << " residual=" << format_double(result.report.final_residual) << "\n";

  if (o.format == "json") {
    json doc;
    doc["spec"] = spec_json(o, "run");
    json res;
    res["converged"] = result.report.converged;
    res["steps"] = result.report.steps;
    res["final_residual"] = result.report.final_residual;
    res["shock_cell"] = result.shock_cell;
    res["s_c"] = result.s_c;
    res["coefficients"] = result.report.solution.coeffs;
    res["residual_history"] = result.report.residual_history;
    doc["results"] = std::move(res);
    std::ofstream out(o.out);
    if (!out) return kExitRunFailure;
    out << doc.dump(2) << "\n";
  } else {
    save_solution_csv(o.out, mesh, result.report.solution);
    save_samples_csv(replace_extension(o.out, "_samples", ".csv"), mesh, result.report.solution);
    save_history_csv(replace_extension(o.out, "_history", ".csv"),
                     result.report.residual_history);
  }
  if (o.require_converged && !result.report.converged && o.max_steps != 0) return kExitRunFailure;
  return 0;
}

int cmd_spectrum(const CommonOpts& o) {
  const Mesh1D mesh{0.0, 1.0, o.cells};
  const BoundaryData bc{1.0, -1.0};
  const ConvexFlux flux = burgers();
  const NumericalFluxKind kind = parse_flux(o.flux);

  ModalSolution base;
  int shock_cell = 0;
  double sc_used = 0.0;
  if (o.sc) {
    // Analytic composite base state from the closed-form profile.
    ShockProfile prof;
    try {
      prof = profile(o.p, *o.sc);
    } catch (const std::exception& e) {
      std::cerr << "spectrum: " << e.what() << "\n";
      return kExitRunFailure;
    }
    shock_cell = mesh.locate(0.5 + 0.5 * mesh.h());
    base = compose_profile_solution(mesh, shock_cell, prof);
    sc_used = *o.sc;
  } else {
    BurgersSteadyConfig cfg = steady_config(o);
    const BurgersSteadyResult run = run_burgers_steady(cfg);
    if (!run.report.converged) {
      std::cerr << "spectrum: base state did not converge (residual "
                << format_double(run.report.final_residual) << ")\n";
      return kExitRunFailure;
    }
    base = run.report.solution;
    shock_cell = run.shock_cell;
    sc_used = run.s_c;
  }

  const double lambda = o.cfl_scale / (2 * o.p + 1);
  const BlockTridiagonalOperator op = assemble(base, kind, flux, lambda, bc);
  DenseMatrix dense = op.dense();
  if (o.rk > 1) dense = rk_amplification(dense, o.rk);

  SpectrumOptions sopts;
  sopts.want_vectors = false;
  const Spectrum spec = analyze_spectrum(dense, sopts);
  const std::vector<UnstableMode> modes = unstable_mode_structure(dense, spec, o.p, shock_cell);

  json doc;
  doc["spec"] = spec_json(o, "spectrum");
  doc["spec"]["lambda"] = lambda;
  doc["spec"]["shock_cell"] = shock_cell;
  doc["spec"]["s_c_used"] = sc_used;
  json eigs = json::array();
  for (const auto& mu : spec.values) {
    eigs.push_back({{"re", mu.real()}, {"im", mu.imag()}});
  }
  json results;
  results["eigenvalues"] = std::move(eigs);
  results["spectral_radius"] = spec.spectral_radius;
  results["stable"] = spec.stable;
  json defects = json::array();
  for (const auto& d : spec.defects) {
    defects.push_back({{"re", d.mu.real()},
                       {"im", d.mu.imag()},
                       {"algebraic", d.algebraic},
                       {"geometric", d.geometric}});
  }
  results["defects"] = std::move(defects);
  json jmodes = json::array();
  for (const auto& m : modes) {
    json jm;
    jm["re"] = m.mu.real();
    jm["im"] = m.mu.imag();
    jm["shock_real_part"] = m.real_part;
    jm["mode_p_ratio"] = m.mode_p_ratio;
    jmodes.push_back(std::move(jm));
  }
  results["unstable_modes"] = std::move(jmodes);
  if (!op.warnings.empty()) {
    json warn = json::array();
    for (const auto& w : op.warnings) {
      warn.push_back({{"face", w.face},
                      {"branch", w.branch == KinkBranch::LeftUpwind ? "left" : "right"}});
    }
    results["kink_warnings"] = std::move(warn);
  }
  doc["results"] = std::move(results);

  if (o.format == "csv") {
    std::ofstream out(o.out);
    if (!out) return kExitRunFailure;
    out << "re,im,abs\n";
    for (const auto& mu : spec.values) {
      out << format_double(mu.real()) << "," << format_double(mu.imag()) << ","
          << format_double(std::abs(mu)) << "\n";
    }
    return 0;
  }
  std::ofstream out(o.out);
  if (!out) return kExitRunFailure;
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_decay_table(const CommonOpts& o) {
  BurgersSteadyConfig cfg = steady_config(o);
  const BurgersSteadyResult result = run_burgers_steady(cfg);
  if (!result.report.converged) {
    std::cerr << "decay-table: run did not converge (residual "
              << format_double(result.report.final_residual) << ")\n";
    return kExitRunFailure;
  }
  const ModalSolution& sol = result.report.solution;
  const double u_l = 1.0;

  std::ofstream out(o.out);
  if (!out) return kExitRunFailure;
  out << "p,cell,u_minus_minus_uL,u_plus_minus_uL";
  for (int l = 0; l <= o.p; ++l) out << ",scaled_dof" << l;
  out << "\n";
  // The three supersonic cells nearest the shock, 1-based as in the tables.
  for (int off = 1; off <= 3; ++off) {
    const int j = result.shock_cell - off;
    if (j < 0) break;
    const Traces tr = traces(sol.cell(j));
    const double u_plus = traces(sol.cell(j + 1)).right;  // right trace at x_{j+1/2}
    out << o.p << "," << (j + 1) << "," << format_double(tr.left - u_l) << ","
        << format_double(u_plus - u_l);
    for (int l = 0; l <= o.p; ++l) {
      const double dof = sol.at(j, l) - (l == 0 ? u_l : 0.0);
      out << "," << format_double(std::abs(dof / (u_plus - u_l)));
    }
    out << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modal DG shock-profile toolkit for the 1D Burgers equation"};
  app.require_subcommand(1);

  CommonOpts o;
  double sc_min = -0.99;
  double sc_max = 0.99;
  int count = 199;

  auto add_common = [&](CLI::App* cmd, bool needs_out = true) {
    cmd->add_option("--p", o.p, "polynomial degree");
    cmd->add_option("--cells", o.cells, "number of mesh cells");
    cmd->add_option("--flux", o.flux, "numerical flux: godunov|llf|osher");
    cmd->add_option("--ubar", o.ubar, "mean of the initial condition, in (-2,2)");
    cmd->add_option("--sc", o.sc, "relative shock position in the central cell");
    cmd->add_option("--rk", o.rk, "Runge-Kutta order 1|2|3")->check(CLI::Range(1, 3));
    cmd->add_option("--cfl-scale", o.cfl_scale, "scale on the CFL=1/(2p+1) time step");
    cmd->add_option("--max-steps", o.max_steps, "iteration budget");
    cmd->add_option("--tol", o.tol, "steady residual tolerance");
    cmd->add_flag("--svv", o.svv, "enable spectral vanishing viscosity");
    cmd->add_option("--svv-eps", o.svv_eps, "viscosity coefficient (default h/(p+1))");
    cmd->add_option("--detector-threshold", o.detector_threshold, "smoothness detector threshold");
    if (needs_out) cmd->add_option("--out", o.out, "output path")->required();
    cmd->add_option("--format", o.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_flag("--require-converged", o.require_converged,
                  "exit with code 3 when the run does not converge");
  };

  CLI::App* profile_cmd = app.add_subcommand("profile", "closed-form shock-cell profiles");
  add_common(profile_cmd);
  profile_cmd->add_option("--sc-min", sc_min, "sweep start");
  profile_cmd->add_option("--sc-max", sc_max, "sweep end");
  profile_cmd->add_option("--count", count, "sweep size");

  CLI::App* run_cmd = app.add_subcommand("run", "time-march to a steady state");
  add_common(run_cmd);

  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "linearized-operator eigenvalues");
  add_common(spectrum_cmd);

  CLI::App* decay_cmd = app.add_subcommand("decay-table", "supersonic-region decay table");
  add_common(decay_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kExitBadSpec;
  }

  try {
    if (app.got_subcommand(profile_cmd)) return cmd_profile(o, sc_min, sc_max, count);
    if (app.got_subcommand(run_cmd)) return cmd_run(o);
    if (app.got_subcommand(spectrum_cmd)) return cmd_spectrum(o);
    if (app.got_subcommand(decay_cmd)) return cmd_decay_table(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadSpec;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadSpec;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRunFailure;
  }
  return kExitBadSpec;
}

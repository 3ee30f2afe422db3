#include "dgshock/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "dgshock/legendre.hpp"

namespace dgshock {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

void save_solution_csv(const std::string& path, const Mesh1D& mesh, const ModalSolution& sol) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_solution_csv: cannot open " + path);
  out << "# x_min " << format_double(mesh.x_min) << "\n";
  out << "# x_max " << format_double(mesh.x_max) << "\n";
  out << "# n_cells " << mesh.n_cells << "\n";
  out << "# p " << sol.p << "\n";
  out << "cell,x_left,x_right";
  for (int l = 0; l <= sol.p; ++l) out << ",u" << l;
  out << "\n";
  for (int j = 0; j < sol.n_cells; ++j) {
    out << j << "," << format_double(mesh.left(j)) << "," << format_double(mesh.left(j + 1));
    for (int l = 0; l <= sol.p; ++l) out << "," << format_double(sol.at(j, l));
    out << "\n";
  }
}

LoadedSolution load_solution_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_solution_csv: cannot open " + path);
  LoadedSolution loaded;
  int p = -1, n_cells = -1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream ss(line.substr(1));
      std::string key;
      ss >> key;
      if (key == "x_min") ss >> loaded.mesh.x_min;
      if (key == "x_max") ss >> loaded.mesh.x_max;
      if (key == "n_cells") ss >> n_cells;
      if (key == "p") ss >> p;
      continue;
    }
    if (line.rfind("cell,", 0) == 0) break;  // header row
  }
  if (p < 0 || n_cells < 1) throw std::runtime_error("load_solution_csv: missing preamble");
  loaded.mesh.n_cells = n_cells;
  loaded.solution = ModalSolution(p, n_cells);
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string field;
    std::getline(ss, field, ',');
    const int j = std::stoi(field);
    std::getline(ss, field, ',');  // x_left
    std::getline(ss, field, ',');  // x_right
    for (int l = 0; l <= p; ++l) {
      std::getline(ss, field, ',');
      loaded.solution.at(j, l) = std::stod(field);
    }
    ++rows;
  }
  if (rows != n_cells) throw std::runtime_error("load_solution_csv: row count mismatch");
  return loaded;
}

void save_samples_csv(const std::string& path, const Mesh1D& mesh, const ModalSolution& sol,
                      int samples_per_cell) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_samples_csv: cannot open " + path);
  out << "x,u\n";
  for (int j = 0; j < sol.n_cells; ++j) {
    for (int i = 0; i < samples_per_cell; ++i) {
      const double s = -1.0 + 2.0 * i / (samples_per_cell - 1);
      const double x = mesh.center(j) + 0.5 * mesh.h() * s;
      out << format_double(x) << "," << format_double(eval_modal(sol.cell(j), s)) << "\n";
    }
  }
}

void save_history_csv(const std::string& path, const std::vector<double>& history) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("save_history_csv: cannot open " + path);
  out << "step,residual\n";
  for (size_t i = 0; i < history.size(); ++i) {
    out << i << "," << format_double(history[i]) << "\n";
  }
}

}  // namespace dgshock

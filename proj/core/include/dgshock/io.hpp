#ifndef DGSHOCK_IO_HPP_
#define DGSHOCK_IO_HPP_

#include <string>
#include <vector>

#include "dgshock/mesh.hpp"

namespace dgshock {

/// 17-significant-digit formatting; round-trips doubles exactly.
std::string format_double(double value);

/// Solution dump: `# key value` preamble (x_min, x_max, n_cells, p) followed
/// by a header row and one row per cell with the modal coefficients.
void save_solution_csv(const std::string& path, const Mesh1D& mesh, const ModalSolution& sol);

struct LoadedSolution {
  Mesh1D mesh;
  ModalSolution solution;
};

LoadedSolution load_solution_csv(const std::string& path);

/// Point samples (33 per cell) for plotting: columns x,u.
void save_samples_csv(const std::string& path, const Mesh1D& mesh, const ModalSolution& sol,
                      int samples_per_cell = 33);

/// Residual history: columns step,residual.
void save_history_csv(const std::string& path, const std::vector<double>& history);

}  // namespace dgshock

#endif  // DGSHOCK_IO_HPP_

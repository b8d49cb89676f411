#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sfhp/ensemble.hpp"
#include "sfhp/sde.hpp"

namespace sfhp {

/// Trajectory CSV: header `n,s,dW,q_0..q_{d-1},v_0..v_{d-1},p_0..p_{d-1}`, one row per
/// grid point, numbers with 17 significant digits, dW empty on the last row.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
void write_trajectory_csv(const std::filesystem::path& file, const Trajectory& traj);

/// Reads the numeric columns back. Metadata (formulation, seed, system) is not stored.
Trajectory read_trajectory_csv(std::istream& in);
Trajectory read_trajectory_csv(const std::filesystem::path& file);

/// Summary CSV: `n,s,mean_q_i..,var_q_i..,mean_p_i..,var_p_i..`.
void write_summary_csv(const std::filesystem::path& file, const EnsembleSummary& summary);

/// Minimal static SVG line plot.
struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

void write_svg(const std::filesystem::path& file, const LinePlot& plot);

/// Writes <stem>_n_q.svg, <stem>_n_p.svg and <stem>_q_p.svg from a trajectory CSV
/// (first coordinate). Returns the files written.
std::vector<std::filesystem::path> plot_trajectory_csv(const std::filesystem::path& csv,
                                                       const std::filesystem::path& out_dir,
                                                       const std::string& stem,
                                                       const std::string& title);

}  // namespace sfhp

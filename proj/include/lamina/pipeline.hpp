#pragma once

#include "lamina/config.hpp"
#include "lamina/current.hpp"
#include "lamina/graph.hpp"

namespace lamina {

struct KStageReport {
  int k = 0;
  double epsilon = 0.0;
  int q_family = -1;
  std::array<double, 4> family_mass{};  // family area is 1, so these are S_n(family)
  std::vector<std::pair<std::array<double, 2>, double>> transversal_samples;
  PruneReport prune;
  CurveStats stats_pruned;
  double budget_ratio = 0.0;
  BoundReport bounds;
  ValenceReport valence;

  int s = 0, a = 0;
  int circle_arcs = 0;
  bool handshake_ok = false;
  bool euler_agreement_ok = false;
  int euler_crosses_mesh = 0;
  int euler_off_q_mesh = 0;
  int sum_euler_vertices = 0;

  int islands_over_q = 0;  // selected family, ramified included
  int good_islands = 0;    // all four families
  int ramified_islands = 0;
  int other_cross_components = 0;  // isoperimetric-trichotomy violations
  double epsilon_hat = 0.0;        // 1 - good / (4 k^2 S_n)

  double s_n = 0.0;  // mean sheet number over the square
  double mass_curve = 0.0;
  double mass_current = 0.0;
  double defect = 0.0;
  double good_island_mass_fraction = 0.0;
  bool additivity_ok = false;
  double additivity_error = 0.0;
};

struct RunReport {
  std::string family;
  bool holomorphic = false;
  std::uint64_t seed = 0;

  CurveStats stats_initial;
  bool trimmed = false;
  TrimReport trim;
  CurveStats stats_working;

  complexd direction_z, direction_w;
  double omega_mass = 0.0;
  double jitter_x = 0.0, jitter_y = 0.0;
  double clearance_used = 0.0;
  HCalibration h;
  bool shared_cut = false;

  std::vector<KStageReport> stages;
  DefectTrend trend;

  std::vector<std::string> theorem_failures;
  std::vector<std::string> hypothesis_flags;

  std::string islands_csv;
  std::string components_csv;
  std::string defect_csv;
  std::vector<std::pair<int, std::string>> patch_meshes;  // (k, mesh json) when exported

  bool ok() const { return theorem_failures.empty(); }
};

// generate/load -> (trim) -> choose_direction -> per k: grid, select_q,
// extract, classify, prune, islands, graph, bounds, assemble, defect row.
RunReport run_pipeline(const RunConfig& config);

// Refinement sweep: requires a doubling k list (nested jitter and one cut at
// the finest lattice), returns the defect rows and the patch-compatibility
// outcome.
DefectTrend defect_sweep(const RunConfig& config);

// Hard-fails (nonzero exit) only on theorem-level failures; hypothesis
// findings are flags in the report.
void write_reports(const RunReport& report, const RunConfig& config, const std::string& out_dir);

// Runs the calibration corpus and persists the resulting h.
HCalibration run_calibration(const RunConfig& config, const std::string& out_path);
double load_h_file(const std::string& path);

std::string format_double(double x);  // deterministic %.17g

}  // namespace lamina

#pragma once

#include <string>
#include <vector>

#include "lamina/components.hpp"
#include "lamina/generators.hpp"
#include "lamina/trim.hpp"

namespace lamina {

struct config_error : error {
  using error::error;
};

struct RunConfig {
  FamilySpec family_spec;
  bool trim_enabled = false;
  TrimParams trim;
  int direction_samples = 32;
  std::vector<int> k_list{4, 8};
  double epsilon_override = 0.0;  // 0 = use the 1/ln(k+3) schedule
  Tolerances tol;
  double grid_clearance = 1e-6;
  double h_estimate = 0.0;  // 0 = read h_file if set, else default_h
  std::string h_file;
  double default_h = 1.0;
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  int threads = 0;            // 0 = library default
  bool export_patches = false;

  // Calibration corpus: family specs in "family:param" shorthand (see README).
  std::vector<std::string> calibration_corpus;
};

// Flat key-value config: one "key = value" per line, '#' comments. Unknown
// keys are rejected.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

void validate_config(const RunConfig& config);
bool k_list_is_doubling(const std::vector<int>& ks);

// "family:p1:p2" shorthand for calibration corpus entries, e.g.
// "flat_sheets:3", "branched_cover:2", "half_sheet", "poly_graph".
FamilySpec corpus_spec(const std::string& shorthand, const FamilySpec& base);

}  // namespace lamina

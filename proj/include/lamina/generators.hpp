#pragma once

#include <limits>
#include <string>
#include <vector>

#include "lamina/mesh.hpp"

namespace lamina {

enum class Family { flat_sheets, branched_cover, poly_graph, handle_body, from_file };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Families producing holomorphic data (residual -> 0 under refinement).
// handle_body is a purely topological genus-heavy control; it is not
// holomorphic and is flagged as such by the pipeline.
bool family_is_holomorphic(Family f);

struct FamilySpec {
  Family family = Family::flat_sheets;

  int sheets = 1;              // flat_sheets: number of parallel graphs
  double sheet_spacing = 0.4;  // w distance between consecutive sheets
  complexd sheet_offset{};     // w offset of the sheet stack ("c")

  int degree = 2;              // branched_cover: w^degree = z - branch_center
  complexd branch_center{};    // branch value in the projection plane

  std::vector<complexd> poly_coeffs{complexd(0, 0), complexd(0, 0), complexd(0.5, 0)};

  int tubes = 0;               // handle_body: genus of the result
  double tube_spread = 0.92;   // tubes placed on a grid inside [-spread, spread]^2

  double resolution = 0.02;    // target edge length in the projection plane
  double margin = 0.25;        // sheet domains extend to [-(1+margin), 1+margin]^2

  // Optional half-plane clip of sheet domains (keep Re z <= value). Used by
  // the covering-statistics calibration fixtures.
  double half_plane_clip = std::numeric_limits<double>::infinity();

  std::uint64_t seed = 1;
  std::string path;  // from_file
};

// Generates the discretized curve for the spec. Throws lamina::error when a
// resolution is too coarse to represent branch points or tube footprints.
DiscreteCurve generate(const FamilySpec& spec);

// Exact analytic fiber of the projection over base_point (all sheets).
// Only defined for the holomorphic families; errors on branch values.
std::vector<PointC2> sheet_oracle(const FamilySpec& spec, complexd base_point);

// Branch values of the first-coordinate projection, used to steer the grid
// jitter away from them.
std::vector<complexd> critical_values(const FamilySpec& spec);

}  // namespace lamina

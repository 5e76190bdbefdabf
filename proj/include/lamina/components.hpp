#pragma once

#include <array>
#include <span>
#include <vector>

#include "lamina/cut.hpp"

namespace lamina {

enum class ComponentClass {
  unset,
  long_boundary,
  covering,
  small,
  island,
  ramified_island,
  other,  // isoperimetric-trichotomy violation, kept visible
};

const char* component_class_name(ComponentClass c);

enum class RegionKind { q_cell, cross };

struct Region {
  RegionKind kind = RegionKind::q_cell;
  int gi = 0, gj = 0;   // cell index (cross: center cell index)
  int cross_index = -1;  // into Decomposition::crosses for kind == cross
  double area = 0.0;
  bool clipped = false;
};

// Connected piece of the curve over one region, with the covering metrics
// the counting chain consumes.
struct FiberComponent {
  int region = -1;
  std::vector<int> faces;
  double projected_area = 0.0;       // area of the projected image with multiplicity
  double rel_boundary_length = 0.0;  // projected length of boundary over the region interior
  int euler = 0;
  ComponentClass cls = ComponentClass::unset;
  bool has_fold = false;  // sign change of the projected orientation inside the component
  std::array<double, 4> alpha_cover{};   // mean sheet count over each alpha side (crosses)
  std::array<int, 4> alpha_arc_count{};  // arcs per alpha side, filled by build_graph
  int valence = 0;                       // filled by build_graph

  double degree(double region_area) const {
    return region_area > 0.0 ? projected_area / region_area : 0.0;
  }
};

struct Tolerances {
  double boundary_snap_factor = 1e-7;  // x cell side: boundary edges this close to
                                       // the region boundary count as lying on it
  double ramification_threshold = 1.5;
  double island_degree_tol = 0.05;
  double fold_area_floor = 1e-13;
};

// Region decomposition of the cut curve for one family playing Q: its k^2
// cells plus the k^2 crosses paving the rest of the square. face_mask (when
// nonempty) marks pruned-away faces.
struct Decomposition {
  int family = -1;
  GridSpec grid;
  std::vector<Cross> crosses;
  std::vector<Region> regions;  // q cells first, then crosses
  std::vector<int> face_region;     // -1 = outside the square (or masked)
  std::vector<int> face_component;  // -1 likewise
  std::vector<FiberComponent> components;
  double outside_mass = 0.0;
  double q_mass = 0.0;
  double cross_mass = 0.0;
  double interior_cross_mass = 0.0;
  int interior_cross_count = 0;

  int q_region_count = 0;
  const Region& component_region(const FiberComponent& c) const { return regions[c.region]; }
};

// The grid may be coarser than the cut lattice (same jitter, k dividing
// lattice_k); a refinement sweep reuses one cut for every level.
Decomposition decompose(const CutCurve& cut, const GridSpec& grid, int family,
                        const Tolerances& tol = {}, std::span<const std::uint8_t> face_mask = {});
inline Decomposition decompose(const CutCurve& cut, int family, const Tolerances& tol = {},
                               std::span<const std::uint8_t> face_mask = {}) {
  return decompose(cut, cut.grid, family, tol, face_mask);
}

// Least-covered family: mean sheet number per family from the per-cell
// projected masses; ties (within 1e-9 relative) pick the smallest index.
int select_q(const CutCurve& cut, const GridSpec& grid, std::array<double, 4>& family_mass);
GridSpec select_q(const CutCurve& cut, const GridSpec& grid);
inline GridSpec select_q(const CutCurve& cut) { return select_q(cut, cut.grid); }

// Long/short boundary and isoperimetric trichotomy for a cross component.
ComponentClass classify_cross_component(const FiberComponent& c, const Region& region,
                                        const GridSpec& grid);

// Tags Q-cell components: islands (disk, all boundary over the cell edge),
// ramified islands (multiplicity above threshold or a fold), remaining
// degree-1 islands are the good-island candidates.
void detect_islands(Decomposition& decomp, const Tolerances& tol = {});

struct PruneReport {
  int removed_components = 0;
  double removed_mass = 0.0;
  double removed_rel_boundary = 0.0;
  double mass_bound = 0.0;  // (4/k) * sum of removed l_i
  bool mass_bound_ok = true;
  double curve_boundary_bound = 0.0;  // (4/k) * L_n
  bool curve_bound_ok = true;
};

// Masks away the faces of every SMALL cross component. curve_boundary_length
// is L_n of the pre-prune curve (R^4 metric).
PruneReport prune_small(const Decomposition& decomp, double curve_boundary_length,
                        std::vector<std::uint8_t>& face_mask);

}  // namespace lamina

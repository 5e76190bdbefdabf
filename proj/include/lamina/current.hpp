#pragma once

#include <array>
#include <functional>
#include <vector>

#include "lamina/components.hpp"

namespace lamina {

// Test forms are scalar functions on the square C, paired against currents
// through the pullback by the projection.
using TestForm = std::function<double(double, double)>;

// Bilinear interpolation of values sampled on an (n+1) x (n+1) grid over the
// jittered square; constant extension outside.
TestForm grid_sampled_form(std::vector<double> samples, int n, const GridSpec& grid);

// Graph patch of one good island: a degree-1 graph over its Q cell.
struct IslandPatch {
  int family = -1;
  int gi = 0, gj = 0;  // owning cell
  std::vector<int> faces;
  double projected_area = 0.0;
};

// Discrete laminated-current approximation: the good islands over all four
// families, weighted by 1/A_n.
struct CurrentApprox {
  double weight = 0.0;  // 1 / A_n
  int k = 0;
  std::vector<IslandPatch> patches;
  double mass_pi_omega = 0.0;       // weight x sum of patch projected areas
  double curve_mass_in_square = 0.0;  // weight x projected curve mass over C
  double defect = 0.0;              // curve_mass_in_square - mass_pi_omega
  int good_island_count = 0;
  int ramified_island_count = 0;
};

// Collects the good islands of the four family decompositions. Throws if a
// patch of multiplicity far from 1 slipped through (not a graph).
CurrentApprox assemble(const CutCurve& cut, const std::array<Decomposition, 4>& families,
                       double curve_area, const Tolerances& tol = {});

// Pairing of the full curve (restricted to the square) with a test form:
// weight x sum over faces of form(centroid) x |projected area|.
double evaluate_curve(const CutCurve& cut, const std::array<Decomposition, 4>& families,
                      double curve_area, const TestForm& form);
double evaluate_curve_serial(const CutCurve& cut, const std::array<Decomposition, 4>& families,
                             double curve_area, const TestForm& form);

// Same pairing for the island current.
double evaluate(const CurrentApprox& current, const CutCurve& cut, const TestForm& form);

// Empirical transverse measure of the fiber over a base point interior to a
// cell: weight x number of patches over that cell. Errors on cell boundaries.
double transversal_measure(const CurrentApprox& current, const GridSpec& grid, complexd base_point);

struct DefectRow {
  int k = 0;
  double epsilon = 0.0;
  double mass_curve = 0.0;   // T_n mass over the square
  double mass_current = 0.0;  // T_{k,n} mass
  double defect = 0.0;
  int good_islands = 0;
  int ramified_islands = 0;
};

struct DefectTrend {
  std::vector<DefectRow> rows;
  bool nesting_checked = false;
  bool nesting_ok = true;
  long long nested_patch_pairs = 0;
};

// Checks the refinement compatibility between consecutive doubling scales:
// every good patch at scale 2k whose cell lies inside a good-patch cell at
// scale k must be a face-wise subset of that patch. Both currents must come
// from the same cut (shared finest lattice).
void check_patch_nesting(const CurrentApprox& coarse, const CurrentApprox& fine, DefectTrend& trend);

}  // namespace lamina

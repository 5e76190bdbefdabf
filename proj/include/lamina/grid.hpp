#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "lamina/mesh.hpp"

namespace lamina {

// Quadrillage of the square C = [-1,1]^2 (shifted by a jitter offset) into
// 2k x 2k cells of side 1/k, split into four parity families of k^2 cells.
// Family index = (i % 2) * 2 + (j % 2): (even,even), (even,odd), (odd,even),
// (odd,odd).
struct GridSpec {
  int k = 4;
  double jitter_x = 0.0;
  double jitter_y = 0.0;
  double epsilon = 0.0;  // short/long boundary threshold scale, 1/ln(k+3) by default
  int q_family = -1;     // selected least-covered family
  double clearance_used = 0.0;          // realized vertex-to-line clearance bound
  std::array<double, 4> family_mass{};  // projected mass over each family (select_q)

  double cell_side() const { return 1.0 / k; }
  int cells_per_side() const { return 2 * k; }
  double origin_x() const { return -1.0 + jitter_x; }
  double origin_y() const { return -1.0 + jitter_y; }
  double cell_x(int i) const { return origin_x() + i * cell_side(); }
  double cell_y(int j) const { return origin_y() + j * cell_side(); }
  int family_of_cell(int i, int j) const { return (i % 2) * 2 + (j % 2); }
};

double default_epsilon(int k);

struct JitterOptions {
  double clearance = 1e-6;   // min distance of projected vertices to grid lines
  double amplitude = 0.0;    // 0 = 1/(8k) of the finest lattice
  int max_retries = 64;
  int lattice_k = 0;         // check clearance against this lattice (0 = k)
};

// Builds the grid with a jitter offset keeping every projected mesh vertex
// and every listed critical value off the grid-line arrangement.
GridSpec build_grid(int k, std::uint64_t jitter_seed, std::span<const complexd> projected_points,
                    std::span<const complexd> avoid_values, const JitterOptions& opts = {});

// Plus-shaped tile of the cross paving of C - Q: one center cell plus the
// four adjacent half-cells. Arms at the square boundary either widen to the
// full neighbor cell (no cross beyond) or are missing (no cell beyond); such
// crosses are flagged clipped. Interior crosses have area 3/k^2 and four
// alpha sides of length 1/k, each shared with exactly one neighbor cross.
struct Cross {
  int ci = 0, cj = 0;  // center cell index
  bool clipped = false;
  double area = 0.0;

  struct Arm {
    bool present = false;
    bool full_cell = false;  // widened to the whole neighbor cell at the boundary
  };
  std::array<Arm, 4> arms{};  // -x, +x, -y, +y

  struct AlphaSide {
    bool present = false;
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    int neighbor = -1;  // index into the cross list
  };
  std::array<AlphaSide, 4> alpha{};

  // Boundary segments of the plus polygon (axis-aligned), used for the
  // relative-boundary classification.
  struct Segment {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  };
  std::vector<Segment> boundary;
};

// Crosses paving C - Q for the family of the given parity. Families other
// than even-even are handled by translating the parity of the center cells.
std::vector<Cross> build_crosses(const GridSpec& grid, int family);
inline std::vector<Cross> build_crosses(const GridSpec& grid) {
  if (grid.q_family < 0) throw error("build_crosses: q_family not selected");
  return build_crosses(grid, grid.q_family);
}

// Evaluates the normalized projected mass for `samples` quasi-uniform
// directions and returns the frame maximizing it (ties broken by sample
// order). Samples 0 and 1 are the two coordinate axes exactly.
ProjectionFrame choose_direction(const DiscreteCurve& curve, int samples, std::uint64_t seed);

std::vector<ProjectionFrame> direction_samples(int samples, std::uint64_t seed);

}  // namespace lamina

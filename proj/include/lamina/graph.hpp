#pragma once

#include <span>
#include <vector>

#include "lamina/components.hpp"

namespace lamina {

struct GraphEdge {
  int comp_a = -1, comp_b = -1;
};

// Adjacency graph over the crosses: one vertex per cross component, one edge
// per matched pair of boundary arcs over a shared alpha side (multi-edges
// allowed). Also carries the exact mesh-side Euler numbers the counting
// chain compares against.
struct CountingGraph {
  int vertex_count = 0;  // s
  int edge_count = 0;    // a: arcs (contractible) only
  std::vector<GraphEdge> edges;
  // Closed preimage loops over a side (a tube encircled by the projection,
  // for instance) have Euler characteristic 0: they are adjacencies but must
  // not enter the arc count, or the chain inequality stops being a theorem.
  int circle_arcs = 0;
  long long sum_valence = 0;
  int sum_euler_vertices = 0;
  int euler_crosses_mesh = 0;  // chi of the union of cross components, from the mesh
  int euler_off_q_mesh = 0;    // chi of everything off the Q cells (crosses + outside)
  bool handshake_ok = false;        // 2a = sum of valences
  bool euler_agreement_ok = false;  // euler_crosses_mesh = sum chi(Sigma) - a
};

// Fills component valences and per-side arc counts. face_mask (when
// nonempty) marks pruned faces; the decomposition must have been built with
// the same mask. Throws on unmatched arcs over interior alpha sides.
CountingGraph build_graph(const CutCurve& cut, Decomposition& d,
                          std::span<const std::uint8_t> face_mask = {});

// Ahlfors covering statistics of one cross component under f = k pi, so the
// base cross has size independent of k.
struct CoveringStats {
  double mean_sheets = 0.0;          // S(Sigma) = a(Sigma) / cross area
  double rel_boundary = 0.0;         // L = k * l(Sigma)
  std::array<double, 4> arc_sheets{};  // S(alpha_i)
  double h_ratio = 0.0;              // max_i |S - S(alpha_i)| / L (0 when L = 0)
};

CoveringStats ahlfors_stats(const FiberComponent& c, const Cross& cross, const GridSpec& grid);

struct HCalibration {
  double h = 1.0;
  double max_ratio = 0.0;
  int samples = 0;       // components with L above the floor
  double safety = 1.5;
  bool from_default = true;
};

// Max of |S - S(alpha_i)| / L over the corpus, padded by the safety factor.
// Returns the default when the corpus has no component with L > l_floor.
HCalibration calibrate_h(const std::vector<const Decomposition*>& corpus, double default_h = 1.0,
                         double l_floor = 1e-9, double safety = 1.5);

// The exact counting chain. All quantities are integers:
//   (i)  chi(off Q) >= chi(curve) - #islands
//   (ii) chi(off Q) <= s - a
//   (iii) #islands >= chi(curve) + a - s
struct BoundReport {
  int islands = 0;  // islands over Q, ramified included
  int chi_curve = 0;
  int chi_off_q = 0;
  int s = 0, a = 0;
  bool ok_i = false, ok_ii = false, ok_iii = false;
  bool ok = false;
  long long islands_lower_bound = 0;  // chi(curve) + a - s
  long long slack_i = 0, slack_ii = 0, slack_iii = 0;
};

BoundReport island_lower_bound(const CountingGraph& graph, int chi_curve, int islands_over_q);

// Per-vertex and aggregate Ahlfors valence bounds with a calibrated h, and
// the vertex-count bound. Clipped boundary crosses are excluded and counted.
struct ValenceReport {
  double h = 0.0;
  int checked = 0;
  int valence_violations = 0;
  int ahlfors_checked = 0;
  int ahlfors_violations = 0;
  double max_h_ratio = 0.0;
  double aggregate_lhs = 0.0;  // sum of interior valences
  double aggregate_rhs = 0.0;  // 4 sum S(Sigma) - 4 h k sum l(Sigma)
  bool aggregate_ok = false;
  long long vertices_interior = 0;
  double vertex_bound_rhs = 0.0;
  bool vertex_bound_ok = false;
  double s_n_cq_interior = 0.0;  // mean sheets over the interior crosses
  int excluded_clipped = 0;
  std::vector<int> offending;  // component indices failing the valence bound
};

ValenceReport valence_bound_check(const Decomposition& d, const CountingGraph& graph,
                                  double h_estimate);

}  // namespace lamina

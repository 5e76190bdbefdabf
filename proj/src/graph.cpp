#include "lamina/graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <unordered_map>

namespace lamina {

namespace {

double point_segment_distance(complexd p, double x0, double y0, double x1, double y1) {
  const double dx = x1 - x0, dy = y1 - y0;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.real() - x0) * dx + (p.imag() - y0) * dy) / len2, 0.0, 1.0);
  const double qx = x0 + t * dx - p.real();
  const double qy = y0 + t * dy - p.imag();
  return std::sqrt(qx * qx + qy * qy);
}

}  // namespace

CountingGraph build_graph(const CutCurve& cut, Decomposition& d,
                          std::span<const std::uint8_t> face_mask) {
  CountingGraph g;
  for (FiberComponent& c : d.components) {
    c.valence = 0;
    c.alpha_arc_count = {0, 0, 0, 0};
    if (d.regions[c.region].kind == RegionKind::cross) {
      ++g.vertex_count;
      g.sum_euler_vertices += c.euler;
    }
  }

  const double snap = 1e-7 * d.grid.cell_side();
  const bool masked = !face_mask.empty();
  auto live = [&](int f) { return f >= 0 && (!masked || face_mask[f]); };

  // Edges over shared alpha sides, grouped by the (unordered) cross pair.
  std::map<std::pair<int, int>, std::vector<int>> side_edges;  // region pair -> edge ids
  for (std::size_t ei = 0; ei < cut.edges.size(); ++ei) {
    const MeshEdge& e = cut.edges[ei];
    const int r0 = live(e.f0) ? d.face_region[e.f0] : -1;
    const int r1 = e.f1 >= 0 && live(e.f1) ? d.face_region[e.f1] : -1;

    if (e.f1 < 0 && r0 >= 0 && d.regions[r0].kind == RegionKind::cross) {
      // A genuine mesh boundary edge lying over an interior alpha side means
      // the curve boundary runs along the side; the jitter is supposed to
      // prevent this.
      const Cross& cr = d.crosses[d.regions[r0].cross_index];
      for (int s = 0; s < 4; ++s) {
        if (!cr.alpha[s].present) continue;
        const auto& al = cr.alpha[s];
        if (point_segment_distance(cut.vertex_proj[e.a], al.x0, al.y0, al.x1, al.y1) <= snap &&
            point_segment_distance(cut.vertex_proj[e.b], al.x0, al.y0, al.x1, al.y1) <= snap)
          throw error("build_graph: unmatched boundary arc over an interior alpha side");
      }
    }

    if (r0 < 0 || r1 < 0 || r0 == r1) continue;
    if (d.regions[r0].kind != RegionKind::cross || d.regions[r1].kind != RegionKind::cross)
      continue;
    side_edges[{std::min(r0, r1), std::max(r0, r1)}].push_back(static_cast<int>(ei));
  }

  for (auto& [pair, eids] : side_edges) {
    const int ra = pair.first, rb = pair.second;
    const int ca = d.regions[ra].cross_index, cb = d.regions[rb].cross_index;
    int side_a = -1, side_b = -1;
    for (int s = 0; s < 4; ++s) {
      if (d.crosses[ca].alpha[s].present && d.crosses[ca].alpha[s].neighbor == cb) side_a = s;
      if (d.crosses[cb].alpha[s].present && d.crosses[cb].alpha[s].neighbor == ca) side_b = s;
    }
    if (side_a < 0 || side_b < 0)
      throw error("build_graph: crosses share edges but no alpha side (region bookkeeping)");

    // Chain the side's cut edges into maximal arcs through shared vertices.
    std::unordered_map<int, int> vert_local;
    std::vector<int> parent(2 * eids.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) {
      while (parent[x] != x) {
        parent[x] = parent[parent[x]];
        x = parent[x];
      }
      return x;
    };
    auto local = [&](int v) {
      return vert_local.emplace(v, static_cast<int>(vert_local.size())).first->second;
    };
    std::vector<std::pair<int, int>> ends(eids.size());
    for (std::size_t i = 0; i < eids.size(); ++i) {
      const MeshEdge& e = cut.edges[eids[i]];
      ends[i] = {local(e.a), local(e.b)};
    }
    // Union edges sharing a vertex: map vertex -> first edge seen.
    std::unordered_map<int, int> vert_first_edge;
    auto unite = [&](int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };
    for (std::size_t i = 0; i < eids.size(); ++i) {
      for (int v : {ends[i].first, ends[i].second}) {
        auto [it, fresh] = vert_first_edge.emplace(v, static_cast<int>(i));
        if (!fresh) unite(static_cast<int>(it->second), static_cast<int>(i));
      }
    }
    // One graph edge per contractible arc; the component pair must be
    // constant along it. A chain with no degree-1 vertex is a closed loop.
    std::map<int, std::pair<int, int>> arc_comps;  // arc root -> (comp in ra, comp in rb)
    std::unordered_map<int, int> vert_degree;
    for (std::size_t i = 0; i < eids.size(); ++i) {
      vert_degree[ends[i].first]++;
      vert_degree[ends[i].second]++;
      const MeshEdge& e = cut.edges[eids[i]];
      const int f_in_a = d.face_region[e.f0] == ra ? e.f0 : e.f1;
      const int f_in_b = d.face_region[e.f0] == rb ? e.f0 : e.f1;
      const std::pair<int, int> comps = {d.face_component[f_in_a], d.face_component[f_in_b]};
      auto [it, fresh] = arc_comps.emplace(find(static_cast<int>(i)), comps);
      if (!fresh && it->second != comps)
        throw error("build_graph: arc touches more than one component pair");
    }
    std::map<int, bool> arc_closed;  // arc root -> no endpoint vertex
    for (auto& [root, comps] : arc_comps) arc_closed[root] = true;
    for (std::size_t i = 0; i < eids.size(); ++i) {
      const int root = find(static_cast<int>(i));
      if (vert_degree[ends[i].first] == 1 || vert_degree[ends[i].second] == 1)
        arc_closed[root] = false;
    }
    for (auto& [root, comps] : arc_comps) {
      if (arc_closed[root]) {
        ++g.circle_arcs;
        continue;
      }
      g.edges.push_back({comps.first, comps.second});
      d.components[comps.first].valence++;
      d.components[comps.first].alpha_arc_count[side_a]++;
      d.components[comps.second].valence++;
      d.components[comps.second].alpha_arc_count[side_b]++;
    }
  }

  g.edge_count = static_cast<int>(g.edges.size());
  for (const FiberComponent& c : d.components)
    if (d.regions[c.region].kind == RegionKind::cross) g.sum_valence += c.valence;
  g.handshake_ok = (2LL * g.edge_count == g.sum_valence);

  // Mesh-direct Euler characteristics.
  std::vector<std::uint8_t> cross_faces(cut.mesh.faces.size(), 0);
  std::vector<std::uint8_t> off_q_faces(cut.mesh.faces.size(), 0);
  for (std::size_t f = 0; f < cut.mesh.faces.size(); ++f) {
    if (masked && !face_mask[f]) continue;
    const int r = d.face_region[f];
    if (r >= 0 && d.regions[r].kind == RegionKind::cross) {
      cross_faces[f] = 1;
      off_q_faces[f] = 1;
    } else if (r < 0 && cut.face_subcell_a[f] < 0) {
      off_q_faces[f] = 1;  // projects outside the square
    }
  }
  g.euler_crosses_mesh = euler_of_faces(cut.mesh, cross_faces);
  g.euler_off_q_mesh = euler_of_faces(cut.mesh, off_q_faces);
  g.euler_agreement_ok = (g.euler_crosses_mesh == g.sum_euler_vertices - g.edge_count);
  return g;
}

CoveringStats ahlfors_stats(const FiberComponent& c, const Cross& cross, const GridSpec& grid) {
  if (cross.clipped) throw error("ahlfors_stats: cross is clipped at the square boundary");
  CoveringStats st;
  st.mean_sheets = c.projected_area / cross.area;
  st.rel_boundary = grid.k * c.rel_boundary_length;
  for (int s = 0; s < 4; ++s) {
    if (!cross.alpha[s].present) throw error("ahlfors_stats: missing alpha side");
    st.arc_sheets[s] = c.alpha_cover[s];
  }
  if (st.rel_boundary > 0.0) {
    for (int s = 0; s < 4; ++s) {
      const double r = std::abs(st.mean_sheets - st.arc_sheets[s]) / st.rel_boundary;
      st.h_ratio = std::max(st.h_ratio, r);
    }
  }
  return st;
}

HCalibration calibrate_h(const std::vector<const Decomposition*>& corpus, double default_h,
                         double l_floor, double safety) {
  HCalibration cal;
  cal.safety = safety;
  for (const Decomposition* d : corpus) {
    for (const FiberComponent& c : d->components) {
      const Region& r = d->regions[c.region];
      if (r.kind != RegionKind::cross || r.clipped) continue;
      const double L = d->grid.k * c.rel_boundary_length;
      if (L <= l_floor) continue;
      const CoveringStats st = ahlfors_stats(c, d->crosses[r.cross_index], d->grid);
      cal.max_ratio = std::max(cal.max_ratio, st.h_ratio);
      ++cal.samples;
    }
  }
  if (cal.samples == 0) {
    cal.h = default_h;
    cal.from_default = true;
  } else {
    cal.h = std::max(default_h, safety * cal.max_ratio);
    cal.from_default = false;
  }
  return cal;
}

BoundReport island_lower_bound(const CountingGraph& graph, int chi_curve, int islands_over_q) {
  BoundReport r;
  r.islands = islands_over_q;
  r.chi_curve = chi_curve;
  r.chi_off_q = graph.euler_off_q_mesh;
  r.s = graph.vertex_count;
  r.a = graph.edge_count;
  r.slack_i = static_cast<long long>(r.chi_off_q) - (r.chi_curve - r.islands);
  r.ok_i = r.slack_i >= 0;
  r.slack_ii = static_cast<long long>(r.s - r.a) - r.chi_off_q;
  r.ok_ii = r.slack_ii >= 0;
  r.islands_lower_bound = static_cast<long long>(r.chi_curve) + r.a - r.s;
  r.slack_iii = r.islands - r.islands_lower_bound;
  r.ok_iii = r.slack_iii >= 0;
  r.ok = r.ok_i && r.ok_ii && r.ok_iii;
  return r;
}

ValenceReport valence_bound_check(const Decomposition& d, const CountingGraph& graph,
                                  double h_estimate) {
  (void)graph;
  ValenceReport rep;
  rep.h = h_estimate;
  const double k = static_cast<double>(d.grid.k);
  const double eps = d.grid.epsilon;
  const double interior_cross_area = 3.0 / (k * k);

  double sum_S = 0.0, sum_l = 0.0;
  long long others = 0;
  for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
    const FiberComponent& c = d.components[ci];
    const Region& r = d.regions[c.region];
    if (r.kind != RegionKind::cross) continue;
    if (r.clipped) {
      ++rep.excluded_clipped;
      continue;
    }
    const CoveringStats st = ahlfors_stats(c, d.crosses[r.cross_index], d.grid);
    ++rep.checked;
    ++rep.vertices_interior;
    sum_S += st.mean_sheets;
    sum_l += c.rel_boundary_length;
    rep.aggregate_lhs += c.valence;
    rep.max_h_ratio = std::max(rep.max_h_ratio, st.h_ratio);
    if (c.cls == ComponentClass::other) ++others;

    for (int s = 0; s < 4; ++s) {
      ++rep.ahlfors_checked;
      if (std::abs(st.mean_sheets - st.arc_sheets[s]) >
          h_estimate * st.rel_boundary + 1e-9)
        ++rep.ahlfors_violations;
    }
    const double rhs = 4.0 * st.mean_sheets - 4.0 * h_estimate * st.rel_boundary;
    if (c.valence + 1e-9 < rhs) {
      ++rep.valence_violations;
      rep.offending.push_back(static_cast<int>(ci));
    }
  }

  rep.aggregate_rhs = 4.0 * sum_S - 4.0 * h_estimate * k * sum_l;
  rep.aggregate_ok = rep.aggregate_lhs + 1e-9 >= rep.aggregate_rhs;
  rep.s_n_cq_interior =
      d.interior_cross_count > 0
          ? d.interior_cross_mass / (interior_cross_area * d.interior_cross_count)
          : 0.0;

  // Vertex count bound: every interior vertex is long-boundary, covering, or
  // a flagged trichotomy violation (SMALL ones are pruned before this runs).
  rep.vertex_bound_rhs = d.interior_cross_mass / ((1.0 - eps) * interior_cross_area) +
                         (k / eps) * sum_l + static_cast<double>(others);
  rep.vertex_bound_ok = static_cast<double>(rep.vertices_interior) <= rep.vertex_bound_rhs + 1e-9;
  return rep;
}

}  // namespace lamina

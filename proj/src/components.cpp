#include "lamina/components.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace lamina {

const char* component_class_name(ComponentClass c) {
  switch (c) {
    case ComponentClass::unset: return "none";
    case ComponentClass::long_boundary: return "long_boundary";
    case ComponentClass::covering: return "covering";
    case ComponentClass::small: return "small";
    case ComponentClass::island: return "island";
    case ComponentClass::ramified_island: return "ramified_island";
    case ComponentClass::other: return "other";
  }
  return "?";
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

double point_segment_distance(complexd p, double x0, double y0, double x1, double y1) {
  const double dx = x1 - x0, dy = y1 - y0;
  const double len2 = dx * dx + dy * dy;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.real() - x0) * dx + (p.imag() - y0) * dy) / len2, 0.0, 1.0);
  const double qx = x0 + t * dx - p.real();
  const double qy = y0 + t * dy - p.imag();
  return std::sqrt(qx * qx + qy * qy);
}

// Distance from a projected point to the boundary of a region.
double region_boundary_distance(const Decomposition& d, int region, complexd p) {
  const Region& r = d.regions[region];
  if (r.kind == RegionKind::q_cell) {
    const double s = d.grid.cell_side();
    const double x0 = d.grid.cell_x(r.gi), y0 = d.grid.cell_y(r.gj);
    const double dx = std::min(std::abs(p.real() - x0), std::abs(x0 + s - p.real()));
    const double dy = std::min(std::abs(p.imag() - y0), std::abs(y0 + s - p.imag()));
    return std::min(dx, dy);
  }
  const Cross& cr = d.crosses[r.cross_index];
  double best = std::numeric_limits<double>::infinity();
  for (const Cross::Segment& seg : cr.boundary)
    best = std::min(best, point_segment_distance(p, seg.x0, seg.y0, seg.x1, seg.y1));
  return best;
}

}  // namespace

namespace {

void check_grid_compatible(const CutCurve& cut, const GridSpec& grid) {
  if (cut.lattice_k % grid.k != 0)
    throw error("grid level must divide the cut lattice");
  if (grid.jitter_x != cut.grid.jitter_x || grid.jitter_y != cut.grid.jitter_y)
    throw error("grid jitter differs from the cut jitter");
}

}  // namespace

int select_q(const CutCurve& cut, const GridSpec& grid, std::array<double, 4>& family_mass) {
  check_grid_compatible(cut, grid);
  family_mass = {0.0, 0.0, 0.0, 0.0};
  const int ratio = cut.lattice_k / grid.k;
  for (std::size_t f = 0; f < cut.mesh.faces.size(); ++f) {
    if (cut.face_subcell_a[f] < 0) continue;
    const int i = cut.face_subcell_a[f] / (2 * ratio);
    const int j = cut.face_subcell_b[f] / (2 * ratio);
    family_mass[grid.family_of_cell(i, j)] += std::abs(cut.face_signed_proj[f]);
  }
  int best = 0;
  const double scale = std::max({1.0, family_mass[0], family_mass[1], family_mass[2], family_mass[3]});
  for (int f = 1; f < 4; ++f) {
    if (family_mass[f] < family_mass[best] - 1e-9 * scale) best = f;
  }
  return best;
}

GridSpec select_q(const CutCurve& cut, const GridSpec& grid_in) {
  GridSpec grid = grid_in;
  const int q = select_q(cut, grid, grid.family_mass);
  grid.q_family = q;
  return grid;
}

Decomposition decompose(const CutCurve& cut, const GridSpec& grid, int family,
                        const Tolerances& tol, std::span<const std::uint8_t> face_mask) {
  if (family < 0 || family > 3) throw error("decompose: family out of range");
  check_grid_compatible(cut, grid);
  Decomposition d;
  d.family = family;
  d.grid = grid;
  d.crosses = build_crosses(grid, family);

  const int k = grid.k;
  const int n = grid.cells_per_side();
  const int pi = family / 2, pj = family % 2;
  const double cell_area = grid.cell_side() * grid.cell_side();

  // Regions: the family's k^2 cells, then the crosses.
  d.q_region_count = k * k;
  d.regions.reserve(2 * k * k);
  for (int i = pi; i < n; i += 2)
    for (int j = pj; j < n; j += 2)
      d.regions.push_back({RegionKind::q_cell, i, j, -1, cell_area, false});
  std::map<std::pair<int, int>, int> cross_at;
  for (std::size_t c = 0; c < d.crosses.size(); ++c) {
    const Cross& cr = d.crosses[c];
    cross_at[{cr.ci, cr.cj}] = static_cast<int>(c);
    d.regions.push_back({RegionKind::cross, cr.ci, cr.cj, static_cast<int>(c), cr.area, cr.clipped});
    if (!cr.clipped) ++d.interior_cross_count;
  }
  auto q_region = [&](int i, int j) { return ((i - pi) / 2) * k + (j - pj) / 2; };
  auto cross_region = [&](int ci, int cj) { return d.q_region_count + cross_at.at({ci, cj}); };

  const int ratio = cut.lattice_k / k;
  const std::size_t nf = cut.mesh.faces.size();
  const bool masked = !face_mask.empty();
  d.face_region.assign(nf, -1);
  for (std::size_t f = 0; f < nf; ++f) {
    if (masked && !face_mask[f]) continue;
    const int a_lat = cut.face_subcell_a[f];
    if (a_lat < 0) {
      d.outside_mass += std::abs(cut.face_signed_proj[f]);
      continue;
    }
    const int a = a_lat / ratio, b = cut.face_subcell_b[f] / ratio;  // level-k half-cells
    const int i = a / 2, j = b / 2;
    const int u = (i + pi) & 1, v = (j + pj) & 1;
    int region;
    if (u == 0 && v == 0) {
      region = q_region(i, j);
    } else if (u == 1 && v == 1) {
      region = cross_region(i, j);
    } else if (u == 0 && v == 1) {
      // Q-parity column, center-parity row: split left/right between the
      // flanking crosses (the sole flank absorbs the whole cell at the edge).
      const int left = i - 1, right = i + 1;
      const bool has_left = left >= 0, has_right = right < n;
      const int pick = (a & 1) == 0 ? (has_left ? left : right) : (has_right ? right : left);
      region = cross_region(pick, j);
    } else {
      const int down = j - 1, up = j + 1;
      const bool has_down = down >= 0, has_up = up < n;
      const int pick = (b & 1) == 0 ? (has_down ? down : up) : (has_up ? up : down);
      region = cross_region(i, pick);
    }
    d.face_region[f] = region;
    const double m = std::abs(cut.face_signed_proj[f]);
    if (region < d.q_region_count) {
      d.q_mass += m;
    } else {
      d.cross_mass += m;
      if (!d.regions[region].clipped) d.interior_cross_mass += m;
    }
  }

  // Connected components: faces of the same region sharing an edge.
  UnionFind uf(static_cast<int>(nf));
  for (const MeshEdge& e : cut.edges) {
    if (e.f1 < 0) continue;
    if (d.face_region[e.f0] >= 0 && d.face_region[e.f0] == d.face_region[e.f1])
      uf.unite(e.f0, e.f1);
  }
  std::map<std::pair<int, int>, int> comp_of_root;  // (region, root) -> component
  d.face_component.assign(nf, -1);
  for (std::size_t f = 0; f < nf; ++f) {
    if (d.face_region[f] < 0) continue;
    const int root = uf.find(static_cast<int>(f));
    auto [it, fresh] =
        comp_of_root.emplace(std::make_pair(d.face_region[f], root), static_cast<int>(d.components.size()));
    if (fresh) {
      d.components.push_back({});
      d.components.back().region = d.face_region[f];
    }
    d.face_component[f] = it->second;
  }
  for (std::size_t f = 0; f < nf; ++f)
    if (d.face_component[f] >= 0) d.components[d.face_component[f]].faces.push_back(static_cast<int>(f));

  // Per-component metrics.
  for (FiberComponent& c : d.components)
    for (int f : c.faces) c.projected_area += std::abs(cut.face_signed_proj[f]);

  const double snap = tol.boundary_snap_factor * grid.cell_side();
  const double fold_floor = tol.fold_area_floor * cell_area;
  auto add_boundary_edge = [&](int comp, const MeshEdge& e) {
    FiberComponent& c = d.components[comp];
    const complexd p0 = cut.vertex_proj[e.a];
    const complexd p1 = cut.vertex_proj[e.b];
    const complexd mid = 0.5 * (p0 + p1);
    // The midpoint matters: a chord whose endpoints are both cut vertices on
    // the region boundary can still cross the interior.
    const double dist = std::max({region_boundary_distance(d, c.region, p0),
                                  region_boundary_distance(d, c.region, p1),
                                  region_boundary_distance(d, c.region, mid)});
    const double plen = std::abs(p1 - p0);
    if (dist > snap) {
      c.rel_boundary_length += plen;
      return;
    }
    // On the region boundary: credit alpha-side coverage for crosses.
    const Region& r = d.regions[c.region];
    if (r.kind != RegionKind::cross) return;
    const Cross& cr = d.crosses[r.cross_index];
    for (int s = 0; s < 4; ++s) {
      if (!cr.alpha[s].present) continue;
      const auto& al = cr.alpha[s];
      if (point_segment_distance(p0, al.x0, al.y0, al.x1, al.y1) <= snap &&
          point_segment_distance(p1, al.x0, al.y0, al.x1, al.y1) <= snap &&
          point_segment_distance(mid, al.x0, al.y0, al.x1, al.y1) <= snap) {
        c.alpha_cover[s] += plen * grid.k;  // side length is 1/k
        break;
      }
    }
  };

  for (const MeshEdge& e : cut.edges) {
    const int c0 = e.f0 >= 0 ? d.face_component[e.f0] : -1;
    const int c1 = e.f1 >= 0 ? d.face_component[e.f1] : -1;
    if (c0 >= 0 && c0 == c1) {
      // Internal edge: fold detection (projected orientation flips).
      const double s0 = cut.face_signed_proj[e.f0];
      const double s1 = cut.face_signed_proj[e.f1];
      if (std::abs(s0) > fold_floor && std::abs(s1) > fold_floor && s0 * s1 < 0.0)
        d.components[c0].has_fold = true;
      continue;
    }
    if (c0 >= 0) add_boundary_edge(c0, e);
    if (c1 >= 0) add_boundary_edge(c1, e);
  }

  // Euler characteristic per component, exact integers.
  {
    std::vector<int> vstamp(cut.mesh.vertices.size(), -1);
    std::vector<long long> vcount(d.components.size(), 0);
    std::vector<long long> ecount(d.components.size(), 0);
    for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
      for (int f : d.components[ci].faces) {
        for (int v : cut.mesh.faces[f]) {
          if (vstamp[v] != static_cast<int>(ci)) {
            vstamp[v] = static_cast<int>(ci);
            ++vcount[ci];
          }
        }
      }
    }
    for (const MeshEdge& e : cut.edges) {
      const int c0 = e.f0 >= 0 ? d.face_component[e.f0] : -1;
      const int c1 = e.f1 >= 0 ? d.face_component[e.f1] : -1;
      if (c0 >= 0) ++ecount[c0];
      if (c1 >= 0 && c1 != c0) ++ecount[c1];
    }
    for (std::size_t ci = 0; ci < d.components.size(); ++ci) {
      d.components[ci].euler = static_cast<int>(vcount[ci] - ecount[ci] +
                                                static_cast<long long>(d.components[ci].faces.size()));
    }
  }

  // Classify cross components now; island tags need detect_islands.
  for (FiberComponent& c : d.components) {
    if (d.regions[c.region].kind == RegionKind::cross)
      c.cls = classify_cross_component(c, d.regions[c.region], d.grid);
  }
  return d;
}

ComponentClass classify_cross_component(const FiberComponent& c, const Region& region,
                                        const GridSpec& grid) {
  const double l = c.rel_boundary_length;
  const double a = c.projected_area;
  if (l >= grid.epsilon / grid.k) return ComponentClass::long_boundary;
  if (a <= 4.0 * l * l) return ComponentClass::small;
  if (a >= (1.0 - grid.epsilon) * region.area) return ComponentClass::covering;
  return ComponentClass::other;
}

void detect_islands(Decomposition& d, const Tolerances& tol) {
  const double cell_area = d.grid.cell_side() * d.grid.cell_side();
  for (FiberComponent& c : d.components) {
    if (d.regions[c.region].kind != RegionKind::q_cell) continue;
    if (c.euler == 1 && c.rel_boundary_length == 0.0) {
      const double mult = c.projected_area / cell_area;
      c.cls = (mult > tol.ramification_threshold || c.has_fold) ? ComponentClass::ramified_island
                                                                : ComponentClass::island;
    }
  }
}

PruneReport prune_small(const Decomposition& d, double curve_boundary_length,
                        std::vector<std::uint8_t>& face_mask) {
  PruneReport report;
  const double k = static_cast<double>(d.grid.k);
  double sum_l = 0.0;
  for (const FiberComponent& c : d.components) {
    if (c.cls != ComponentClass::small) continue;
    ++report.removed_components;
    report.removed_mass += c.projected_area;
    sum_l += c.rel_boundary_length;
    for (int f : c.faces) face_mask[f] = 0;
  }
  report.removed_rel_boundary = sum_l;
  report.mass_bound = (4.0 / k) * sum_l;
  report.mass_bound_ok = report.removed_mass <= report.mass_bound + 1e-12;
  report.curve_boundary_bound = (4.0 / k) * curve_boundary_length;
  report.curve_bound_ok = report.removed_mass <= report.curve_boundary_bound + 1e-12;
  return report;
}

}  // namespace lamina

#include "lamina/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lamina/rng.hpp"

namespace lamina {

namespace {

constexpr double kDegenerateAreaFloor = 1e-14;

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
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

}  // namespace

DiscreteCurve make_curve(std::vector<PointC2> vertices, std::vector<Face> faces,
                         std::string name, bool reject_degenerate) {
  const int nv = static_cast<int>(vertices.size());
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    for (int v : f) {
      if (v < 0 || v >= nv)
        throw error("face " + std::to_string(fi) + ": vertex index out of range");
    }
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw error("face " + std::to_string(fi) + ": repeated vertex");
    if (reject_degenerate &&
        triangle_area(vertices[f[0]], vertices[f[1]], vertices[f[2]]) < kDegenerateAreaFloor)
      throw error("face " + std::to_string(fi) + ": degenerate (zero-area) triangle");
  }

  // Surface condition and orientation: every edge in at most two faces, and
  // opposite directions in the two faces sharing it.
  struct EdgeUse {
    int count = 0;
    int dir_first = 0;  // +1 if first use was (min -> max)
  };
  std::unordered_map<std::uint64_t, EdgeUse> uses;
  uses.reserve(faces.size() * 2);
  for (std::size_t fi = 0; fi < faces.size(); ++fi) {
    const Face& f = faces[fi];
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      EdgeUse& u = uses[edge_key(a, b)];
      const int dir = a < b ? 1 : -1;
      if (u.count == 0) {
        u.dir_first = dir;
      } else if (u.count == 1) {
        if (dir == u.dir_first)
          throw error("face " + std::to_string(fi) + ": inconsistent orientation on edge " +
                      std::to_string(a) + "-" + std::to_string(b));
      } else {
        throw error("non-manifold edge " + std::to_string(a) + "-" + std::to_string(b) +
                    " shared by more than two faces");
      }
      ++u.count;
    }
  }

  // Compact unreferenced vertices.
  std::vector<int> remap(vertices.size(), -1);
  std::vector<PointC2> compacted;
  compacted.reserve(vertices.size());
  for (const Face& f : faces) {
    for (int v : f) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(compacted.size());
        compacted.push_back(vertices[v]);
      }
    }
  }
  for (Face& f : faces) {
    for (int& v : f) v = remap[v];
  }

  DiscreteCurve c;
  c.vertices = std::move(compacted);
  c.faces = std::move(faces);
  c.name = std::move(name);
  return c;
}

MeshTopology build_topology(const DiscreteCurve& curve) {
  MeshTopology topo;
  std::unordered_map<std::uint64_t, int> edge_index;
  edge_index.reserve(curve.faces.size() * 2);
  for (std::size_t fi = 0; fi < curve.faces.size(); ++fi) {
    const Face& f = curve.faces[fi];
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      const std::uint64_t key = edge_key(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        edge_index.emplace(key, static_cast<int>(topo.edges.size()));
        topo.edges.push_back({std::min(a, b), std::max(a, b), static_cast<int>(fi), -1});
      } else {
        topo.edges[it->second].f1 = static_cast<int>(fi);
      }
    }
  }

  // Connected components through edges.
  UnionFind uf(static_cast<int>(curve.vertices.size()));
  for (const MeshEdge& e : topo.edges) uf.unite(e.a, e.b);
  std::unordered_map<int, int> root_to_comp;
  topo.vertex_component.resize(curve.vertices.size(), -1);
  for (int v = 0; v < static_cast<int>(curve.vertices.size()); ++v) {
    const int r = uf.find(v);
    auto it = root_to_comp.find(r);
    if (it == root_to_comp.end()) it = root_to_comp.emplace(r, static_cast<int>(root_to_comp.size())).first;
    topo.vertex_component[v] = it->second;
  }
  topo.component_count = static_cast<int>(root_to_comp.size());
  topo.face_component.resize(curve.faces.size());
  for (std::size_t fi = 0; fi < curve.faces.size(); ++fi)
    topo.face_component[fi] = topo.vertex_component[curve.faces[fi][0]];

  // Boundary loops: directed boundary edges (as they appear in their single
  // face) chain head to tail. At a pinch vertex the smallest-target edge is
  // taken, which keeps the walk deterministic.
  std::unordered_map<std::uint64_t, int> boundary_dir;  // key -> from vertex
  std::vector<std::pair<int, int>> bedges;              // (from, to)
  for (std::size_t fi = 0; fi < curve.faces.size(); ++fi) {
    const Face& f = curve.faces[fi];
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      (void)boundary_dir;
      const std::uint64_t key = edge_key(a, b);
      const MeshEdge& me = topo.edges[edge_index[key]];
      if (me.f1 < 0) bedges.emplace_back(a, b);
    }
  }
  std::sort(bedges.begin(), bedges.end());
  std::unordered_map<int, std::vector<int>> outgoing;  // from -> indices into bedges
  for (int i = 0; i < static_cast<int>(bedges.size()); ++i)
    outgoing[bedges[i].first].push_back(i);
  std::vector<std::uint8_t> used(bedges.size(), 0);
  for (int start = 0; start < static_cast<int>(bedges.size()); ++start) {
    if (used[start]) continue;
    std::vector<int> loop;
    int cur = start;
    while (true) {
      used[cur] = 1;
      loop.push_back(bedges[cur].first);
      const int to = bedges[cur].second;
      int next = -1;
      for (int cand : outgoing[to]) {
        if (!used[cand]) {
          next = cand;
          break;
        }
      }
      if (next < 0) {
        if (to != bedges[start].first)
          throw error("open boundary chain (not a closed loop)");
        break;
      }
      cur = next;
    }
    topo.loop_component.push_back(topo.vertex_component[loop.front()]);
    topo.boundary_loops.push_back(std::move(loop));
  }
  return topo;
}

CurveStats compute_stats(const DiscreteCurve& curve) {
  CurveStats stats;
  if (curve.faces.empty()) return stats;
  const MeshTopology topo = build_topology(curve);

  stats.component_count = topo.component_count;
  stats.vertex_count = static_cast<int>(curve.vertices.size());
  stats.edge_count = static_cast<int>(topo.edges.size());
  stats.face_count = static_cast<int>(curve.faces.size());
  stats.components.resize(topo.component_count);

  for (int v = 0; v < static_cast<int>(curve.vertices.size()); ++v)
    stats.components[topo.vertex_component[v]].vertex_count++;
  for (const MeshEdge& e : topo.edges) {
    ComponentStats& cs = stats.components[topo.vertex_component[e.a]];
    cs.edge_count++;
    if (e.f1 < 0) {
      const double len = norm4(curve.vertices[e.b] - curve.vertices[e.a]);
      cs.boundary_length += len;
      stats.boundary_length += len;
    }
  }
  for (std::size_t fi = 0; fi < curve.faces.size(); ++fi) {
    const Face& f = curve.faces[fi];
    ComponentStats& cs = stats.components[topo.face_component[fi]];
    cs.face_count++;
    const double a = triangle_area(curve.vertices[f[0]], curve.vertices[f[1]], curve.vertices[f[2]]);
    cs.area += a;
    stats.area += a;
    const double dev =
        holomorphy_deviation(curve.vertices[f[0]], curve.vertices[f[1]], curve.vertices[f[2]]);
    if (dev > stats.holomorphy_residual) stats.holomorphy_residual = dev;
  }
  for (int lc : topo.loop_component) stats.components[lc].boundary_loops++;

  for (ComponentStats& cs : stats.components) {
    cs.euler = cs.vertex_count - cs.edge_count + cs.face_count;
    const int twice_genus = 2 - cs.euler - cs.boundary_loops;
    if (twice_genus < 0 || twice_genus % 2 != 0)
      throw error("component violates V - E + F = 2 - 2g - b (chi=" + std::to_string(cs.euler) +
                  ", b=" + std::to_string(cs.boundary_loops) + ")");
    cs.genus = twice_genus / 2;
    stats.genus += cs.genus;
    stats.boundary_count += cs.boundary_loops;
    stats.euler_characteristic += cs.euler;
  }
  return stats;
}

namespace {

// Root of |a + t(b-a)|^2 = r^2 in (0,1), assuming opposite signs at the ends.
double sphere_crossing(const PointC2& a, const PointC2& b, double r2) {
  const PointC2 d = b - a;
  const double alpha = dot4(d, d);
  const double beta = 2.0 * dot4(a, d);
  const double gamma = dot4(a, a) - r2;
  const double disc = beta * beta - 4.0 * alpha * gamma;
  const double sq = std::sqrt(std::max(disc, 0.0));
  const double q = beta >= 0.0 ? -0.5 * (beta + sq) : -0.5 * (beta - sq);
  double t1 = q / alpha;
  double t2 = gamma != 0.0 ? gamma / q : 0.0;
  if (t1 > t2) std::swap(t1, t2);
  const double t = (t1 > 0.0 && t1 < 1.0) ? t1 : t2;
  return std::clamp(t, 1e-12, 1.0 - 1e-12);
}

}  // namespace

SphereCut cut_by_sphere(const DiscreteCurve& curve, double radius, std::uint64_t seed) {
  if (radius <= 0.0) throw error("slice radius must be positive");

  // Nudge the radius off every vertex (the cut locus moves, never the data).
  SplitMix64 rng(seed ^ 0x51BCE5A0ULL);
  double r = radius;
  const double clearance = 1e-12 * std::max(1.0, radius * radius);
  for (int attempt = 0; attempt < 64; ++attempt) {
    bool clear = true;
    const double r2 = r * r;
    for (const PointC2& p : curve.vertices) {
      if (std::abs(norm2_4(p) - r2) < clearance) {
        clear = false;
        break;
      }
    }
    if (clear) break;
    r = radius * (1.0 + 1e-9 * (1.0 + rng.uniform()) * (attempt + 1));
    if (attempt == 63) throw error("could not nudge slice radius off mesh vertices");
  }
  const double r2 = r * r;

  SphereCut cut;
  cut.radius_used = r;
  cut.mesh.vertices = curve.vertices;
  cut.mesh.name = curve.name;

  std::unordered_map<std::uint64_t, int> crossing;  // edge -> new vertex

  auto cross_vertex = [&](int a, int b) {
    const std::uint64_t key = edge_key(a, b);
    auto it = crossing.find(key);
    if (it != crossing.end()) return it->second;
    // Interpolate from the canonical (min,max) orientation so both incident
    // faces produce the identical point.
    const int lo = std::min(a, b), hi = std::max(a, b);
    const double t = sphere_crossing(cut.mesh.vertices[lo], cut.mesh.vertices[hi], r2);
    const PointC2 p = cut.mesh.vertices[lo] + t * (cut.mesh.vertices[hi] - cut.mesh.vertices[lo]);
    const int idx = static_cast<int>(cut.mesh.vertices.size());
    cut.mesh.vertices.push_back(p);
    crossing.emplace(key, idx);
    return idx;
  };

  for (const Face& f : curve.faces) {
    int inside[3];
    int n_in = 0;
    for (int i = 0; i < 3; ++i) {
      inside[i] = norm2_4(curve.vertices[f[i]]) < r2 ? 1 : 0;
      n_in += inside[i];
    }
    if (n_in == 3) {
      cut.mesh.faces.push_back(f);
      cut.face_inside.push_back(1);
    } else if (n_in == 0) {
      cut.mesh.faces.push_back(f);
      cut.face_inside.push_back(0);
    } else if (n_in == 1) {
      int i0 = 0;
      while (!inside[i0]) ++i0;
      const int v0 = f[i0], v1 = f[(i0 + 1) % 3], v2 = f[(i0 + 2) % 3];
      const int m01 = cross_vertex(v0, v1);
      const int m20 = cross_vertex(v2, v0);
      cut.mesh.faces.push_back({v0, m01, m20});
      cut.face_inside.push_back(1);
      cut.mesh.faces.push_back({m01, v1, v2});
      cut.face_inside.push_back(0);
      cut.mesh.faces.push_back({m01, v2, m20});
      cut.face_inside.push_back(0);
    } else {  // n_in == 2
      int i0 = 0;
      while (inside[i0]) ++i0;  // i0 = the outside vertex
      const int v0 = f[i0], v1 = f[(i0 + 1) % 3], v2 = f[(i0 + 2) % 3];
      const int m01 = cross_vertex(v0, v1);
      const int m20 = cross_vertex(v2, v0);
      cut.mesh.faces.push_back({v0, m01, m20});
      cut.face_inside.push_back(0);
      cut.mesh.faces.push_back({m01, v1, v2});
      cut.face_inside.push_back(1);
      cut.mesh.faces.push_back({m01, v2, m20});
      cut.face_inside.push_back(1);
    }
  }
  return cut;
}

SliceResult slice_by_sphere(const DiscreteCurve& curve, double radius, std::uint64_t seed) {
  const SphereCut cut = cut_by_sphere(curve, radius, seed);
  std::vector<std::uint8_t> in_mask(cut.face_inside.begin(), cut.face_inside.end());
  std::vector<std::uint8_t> out_mask(in_mask.size());
  for (std::size_t i = 0; i < in_mask.size(); ++i) out_mask[i] = in_mask[i] ? 0 : 1;

  SliceResult res;
  res.radius_used = cut.radius_used;
  res.inside = extract_submesh(cut.mesh, in_mask, curve.name);
  res.outside = extract_submesh(cut.mesh, out_mask, curve.name);
  res.missed = res.inside.faces.empty();
  return res;
}

DiscreteCurve extract_submesh(const DiscreteCurve& curve, const std::vector<std::uint8_t>& face_mask,
                              std::string name, bool reject_degenerate) {
  std::vector<Face> faces;
  for (std::size_t fi = 0; fi < curve.faces.size(); ++fi)
    if (face_mask[fi]) faces.push_back(curve.faces[fi]);
  return make_curve(curve.vertices, std::move(faces), std::move(name), reject_degenerate);
}

int euler_of_faces(const DiscreteCurve& curve, const std::vector<std::uint8_t>& face_mask) {
  std::vector<std::uint8_t> vseen(curve.vertices.size(), 0);
  std::unordered_map<std::uint64_t, std::uint8_t> eseen;
  eseen.reserve(curve.faces.size());
  long long v = 0, e = 0, f = 0;
  for (std::size_t fi = 0; fi < curve.faces.size(); ++fi) {
    if (!face_mask[fi]) continue;
    ++f;
    const Face& face = curve.faces[fi];
    for (int i = 0; i < 3; ++i) {
      if (!vseen[face[i]]) {
        vseen[face[i]] = 1;
        ++v;
      }
      const std::uint64_t key = edge_key(face[i], face[(i + 1) % 3]);
      if (!eseen.count(key)) {
        eseen.emplace(key, 1);
        ++e;
      }
    }
  }
  return static_cast<int>(v - e + f);
}

DiscreteCurve scale_curve(const DiscreteCurve& curve, double factor) {
  DiscreteCurve out = curve;
  for (PointC2& p : out.vertices) p = factor * p;
  return out;
}

}  // namespace lamina

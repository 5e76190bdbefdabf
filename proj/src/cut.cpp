#include "lamina/cut.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace lamina {

namespace {

constexpr double kOnLineEps = 1e-12;

inline std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

struct Cutter {
  std::vector<PointC2> vertices;
  std::vector<complexd> proj;
  std::vector<Face> faces;

  // Split every face along the line {coord = level}, where coord is the real
  // (axis 0) or imaginary (axis 1) part of the projection. Crossing points
  // are shared through an edge cache, and their cut coordinate is set to the
  // line exactly so later sign tests see clean zeros.
  void cut_line(int axis, double level) {
    auto coord = [&](int v) { return axis == 0 ? proj[v].real() : proj[v].imag(); };
    auto sign_of = [&](int v) {
      const double d = coord(v) - level;
      if (d > kOnLineEps) return 1;
      if (d < -kOnLineEps) return -1;
      return 0;
    };

    bool any = false;
    for (const Face& f : faces) {
      int pos = 0, neg = 0;
      for (int v : f) {
        const int s = sign_of(v);
        pos += s > 0;
        neg += s < 0;
      }
      if (pos > 0 && neg > 0) {
        any = true;
        break;
      }
    }
    if (!any) return;

    std::unordered_map<std::uint64_t, int> cache;
    auto crossing = [&](int a, int b) {
      const std::uint64_t key = edge_key(a, b);
      auto it = cache.find(key);
      if (it != cache.end()) return it->second;
      const int lo = std::min(a, b), hi = std::max(a, b);
      const double ca = coord(lo), cb = coord(hi);
      const double t = std::clamp((level - ca) / (cb - ca), 1e-12, 1.0 - 1e-12);
      vertices.push_back(vertices[lo] + t * (vertices[hi] - vertices[lo]));
      complexd p = proj[lo] + t * (proj[hi] - proj[lo]);
      if (axis == 0)
        p = complexd(level, p.imag());
      else
        p = complexd(p.real(), level);
      proj.push_back(p);
      const int idx = static_cast<int>(vertices.size()) - 1;
      cache.emplace(key, idx);
      return idx;
    };

    std::vector<Face> out;
    out.reserve(faces.size() + faces.size() / 8);
    for (const Face& f : faces) {
      int s[3];
      int pos = 0, neg = 0;
      for (int i = 0; i < 3; ++i) {
        s[i] = sign_of(f[i]);
        pos += s[i] > 0;
        neg += s[i] < 0;
      }
      if (pos == 0 || neg == 0) {
        out.push_back(f);
        continue;
      }
      if (pos == 1 && neg == 1) {
        // One vertex on the line: split through it.
        int zi = 0;
        while (s[zi] != 0) ++zi;
        const int vz = f[zi], u1 = f[(zi + 1) % 3], u2 = f[(zi + 2) % 3];
        const int m = crossing(u1, u2);
        out.push_back({vz, u1, m});
        out.push_back({vz, m, u2});
        continue;
      }
      // Two vertices on one side, one on the other.
      const int lone_sign = pos == 1 ? 1 : -1;
      int li = 0;
      while (s[li] != lone_sign) ++li;
      const int v0 = f[li], v1 = f[(li + 1) % 3], v2 = f[(li + 2) % 3];
      const int m01 = crossing(v0, v1);
      const int m20 = crossing(v2, v0);
      out.push_back({v0, m01, m20});
      out.push_back({m01, v1, v2});
      out.push_back({m01, v2, m20});
    }
    faces = std::move(out);
  }
};

}  // namespace

CutCurve grid_cut(const DiscreteCurve& curve, const ProjectionFrame& frame, const GridSpec& grid,
                  int lattice_k) {
  CutCurve cut;
  cut.frame = frame;
  cut.grid = grid;
  cut.lattice_k = lattice_k > 0 ? lattice_k : grid.k;
  if (cut.lattice_k % grid.k != 0)
    throw error("grid_cut: lattice must refine the grid (lattice_k multiple of k)");

  Cutter cutter;
  cutter.vertices = curve.vertices;
  cutter.faces = curve.faces;
  cutter.proj.resize(curve.vertices.size());
  for (std::size_t v = 0; v < curve.vertices.size(); ++v)
    cutter.proj[v] = frame.project(curve.vertices[v]);

  const int n_sub = 4 * cut.lattice_k;
  const double pitch = 1.0 / (2.0 * cut.lattice_k);
  for (int j = 0; j <= n_sub; ++j) cutter.cut_line(0, grid.origin_x() + j * pitch);
  for (int j = 0; j <= n_sub; ++j) cutter.cut_line(1, grid.origin_y() + j * pitch);

  cut.mesh.vertices = std::move(cutter.vertices);
  cut.mesh.faces = std::move(cutter.faces);
  cut.mesh.name = curve.name;
  cut.vertex_proj = std::move(cutter.proj);

  const std::size_t nf = cut.mesh.faces.size();
  cut.face_subcell_a.resize(nf);
  cut.face_subcell_b.resize(nf);
  cut.face_signed_proj.resize(nf);
  cut.face_centroid.resize(nf);
#if defined(LAMINA_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(nf); ++i) {
    const Face& f = cut.mesh.faces[static_cast<std::size_t>(i)];
    const complexd pa = cut.vertex_proj[f[0]];
    const complexd pb = cut.vertex_proj[f[1]];
    const complexd pc = cut.vertex_proj[f[2]];
    cut.face_signed_proj[i] = signed_area2(pa, pb, pc);
    const complexd c = (pa + pb + pc) / 3.0;
    cut.face_centroid[i] = c;
    const int a = static_cast<int>(std::floor((c.real() - grid.origin_x()) / pitch));
    const int b = static_cast<int>(std::floor((c.imag() - grid.origin_y()) / pitch));
    if (a < 0 || a >= n_sub || b < 0 || b >= n_sub) {
      cut.face_subcell_a[i] = -1;
      cut.face_subcell_b[i] = -1;
    } else {
      cut.face_subcell_a[i] = a;
      cut.face_subcell_b[i] = b;
    }
  }

  // Edge list of the cut mesh.
  std::unordered_map<std::uint64_t, int> edge_index;
  edge_index.reserve(nf * 2);
  for (std::size_t fi = 0; fi < nf; ++fi) {
    const Face& f = cut.mesh.faces[fi];
    for (int e = 0; e < 3; ++e) {
      const int a = f[e], b = f[(e + 1) % 3];
      const std::uint64_t key = edge_key(a, b);
      auto it = edge_index.find(key);
      if (it == edge_index.end()) {
        edge_index.emplace(key, static_cast<int>(cut.edges.size()));
        cut.edges.push_back({std::min(a, b), std::max(a, b), static_cast<int>(fi), -1});
      } else {
        MeshEdge& me = cut.edges[it->second];
        if (me.f1 >= 0) throw error("grid_cut: produced a non-manifold edge");
        me.f1 = static_cast<int>(fi);
      }
    }
  }
  return cut;
}

}  // namespace lamina

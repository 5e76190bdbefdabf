#include "lamina/trim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <unordered_map>

namespace lamina {

namespace {

struct ShellSplit {
  DiscreteCurve curve;     // trimmed result
  double boundary_length = 0.0;
  int glued = 0;
  int dropped = 0;
};

// Faces inside rho' with the shell components not touching the rho sphere
// removed.
ShellSplit trim_at(const DiscreteCurve& curve, double rho, double rho_prime, std::uint64_t seed) {
  const SphereCut outer = cut_by_sphere(curve, rho_prime, seed);
  std::vector<std::uint8_t> keep_outer(outer.face_inside.begin(), outer.face_inside.end());
  DiscreteCurve inside_outer = extract_submesh(outer.mesh, keep_outer, curve.name);

  ShellSplit split;
  if (inside_outer.faces.empty()) {
    split.curve = std::move(inside_outer);
    return split;
  }

  const SphereCut inner = cut_by_sphere(inside_outer, rho, seed);
  const double rho2 = inner.radius_used * inner.radius_used;
  const double touch_tol = 1e-9 * std::max(1.0, rho2);

  // Connected components of the shell part (outside rho), through shared
  // edges among shell faces.
  const int nf = static_cast<int>(inner.mesh.faces.size());
  std::vector<int> parent(nf);
  for (int i = 0; i < nf; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };

  std::unordered_map<std::uint64_t, int> edge_face;
  edge_face.reserve(nf * 2);
  auto key = [](int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  };
  for (int fi = 0; fi < nf; ++fi) {
    if (inner.face_inside[fi]) continue;
    const Face& f = inner.mesh.faces[fi];
    for (int e = 0; e < 3; ++e) {
      auto [it, fresh] = edge_face.emplace(key(f[e], f[(e + 1) % 3]), fi);
      if (!fresh) unite(it->second, fi);
    }
  }

  // A component touches the rho sphere iff it owns a vertex on it (the cut
  // vertices created by cut_by_sphere).
  std::unordered_map<int, bool> touches;
  for (int fi = 0; fi < nf; ++fi) {
    if (inner.face_inside[fi]) continue;
    const Face& f = inner.mesh.faces[fi];
    bool on_sphere = false;
    for (int v : f)
      if (std::abs(norm2_4(inner.mesh.vertices[v]) - rho2) < touch_tol) on_sphere = true;
    auto [it, fresh] = touches.emplace(find(fi), on_sphere);
    if (!fresh) it->second = it->second || on_sphere;
  }

  std::vector<std::uint8_t> keep(nf, 0);
  for (int fi = 0; fi < nf; ++fi) {
    if (inner.face_inside[fi]) {
      keep[fi] = 1;
    } else if (touches[find(fi)]) {
      keep[fi] = 1;
    }
  }
  for (auto& [root, t] : touches) {
    if (t)
      ++split.glued;
    else
      ++split.dropped;
  }

  split.curve = extract_submesh(inner.mesh, keep, curve.name);
  return split;
}

}  // namespace

std::pair<DiscreteCurve, TrimReport> trim(const DiscreteCurve& curve, const TrimParams& params) {
  if (!(params.rho > 0.0 && params.rho < 1.0)) throw error("trim: rho must lie in (0, 1)");
  if (params.rho_prime_candidates.empty()) throw error("trim: no rho' candidates");
  for (double rp : params.rho_prime_candidates)
    if (!(rp > params.rho && rp < 1.0))
      throw error("trim: rho' candidates must lie strictly between rho and 1");

  TrimReport report;
  report.rho = params.rho;

  // Finite minimum over the candidate slice radii of the resulting boundary
  // length, standing in for the measurable selection of the coarea argument.
  std::vector<double> candidates = params.rho_prime_candidates;
  std::sort(candidates.begin(), candidates.end());
  ShellSplit best;
  double best_rp = 0.0;
  bool have_best = false;
  for (double rp : candidates) {
    ShellSplit split = trim_at(curve, params.rho, rp, params.seed);
    const CurveStats s = split.curve.faces.empty() ? CurveStats{} : compute_stats(split.curve);
    split.boundary_length = s.boundary_length;
    report.candidate_boundary_lengths.push_back(s.boundary_length);
    if (!have_best || split.boundary_length < best.boundary_length) {
      best = std::move(split);
      best_rp = rp;
      have_best = true;
    }
  }

  report.rho_prime_selected = best_rp;
  report.glued_components = best.glued;
  report.dropped_components = best.dropped;
  if (!best.curve.faces.empty()) {
    const CurveStats s = compute_stats(best.curve);
    report.area = s.area;
    report.boundary_length = s.boundary_length;
    report.genus = s.genus;
    report.boundary_count = s.boundary_count;
    report.ratio = s.area > 0.0
                       ? (s.boundary_length + s.genus + s.boundary_count) / s.area
                       : std::numeric_limits<double>::infinity();
    report.budget_exceeded = report.ratio > params.budget;
  }
  return {std::move(best.curve), report};
}

}  // namespace lamina

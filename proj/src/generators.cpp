#include "lamina/generators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "lamina/mesh_io.hpp"

namespace lamina {

const char* family_name(Family f) {
  switch (f) {
    case Family::flat_sheets: return "flat_sheets";
    case Family::branched_cover: return "branched_cover";
    case Family::poly_graph: return "poly_graph";
    case Family::handle_body: return "handle_body";
    case Family::from_file: return "from_file";
  }
  return "?";
}

Family family_from_name(const std::string& name) {
  if (name == "flat_sheets") return Family::flat_sheets;
  if (name == "branched_cover") return Family::branched_cover;
  if (name == "poly_graph") return Family::poly_graph;
  if (name == "handle_body") return Family::handle_body;
  if (name == "from_file") return Family::from_file;
  throw error("unknown curve family: " + name);
}

bool family_is_holomorphic(Family f) {
  return f == Family::flat_sheets || f == Family::branched_cover || f == Family::poly_graph;
}

namespace {

// Square grid over [-R, R]^2 in the z-plane, two triangles per quad,
// counterclockwise. w given per grid node by `height`. Columns with
// min x > clip are dropped (half-plane fixture).
template <class H>
void append_square_sheet(std::vector<PointC2>& vertices, std::vector<Face>& faces, double radius,
                         double resolution, double clip, bool flip, H&& height) {
  const int n = std::max(2, static_cast<int>(std::ceil(2.0 * radius / resolution)));
  const double h = 2.0 * radius / n;
  int n_cols = n;
  if (clip < radius) {
    n_cols = static_cast<int>(std::floor((clip + radius) / h));
    if (n_cols < 1) throw error("half_plane_clip leaves no mesh columns");
  }
  const int base = static_cast<int>(vertices.size());
  const int stride = n + 1;
  for (int i = 0; i <= n_cols; ++i) {
    for (int j = 0; j <= n; ++j) {
      const complexd z(-radius + i * h, -radius + j * h);
      vertices.push_back({z, height(z)});
    }
  }
  auto vid = [&](int i, int j) { return base + i * stride + j; };
  for (int i = 0; i < n_cols; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!flip) {
        faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
        faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
      } else {
        faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i + 1, j)});
        faces.push_back({vid(i, j), vid(i, j + 1), vid(i + 1, j + 1)});
      }
    }
  }
}

// Concentric-ring disk mesh of radius R in the parameter plane; `embed` maps
// the parameter t to a point of C^2.
template <class E>
void append_disk(std::vector<PointC2>& vertices, std::vector<Face>& faces, double radius,
                 double dt, E&& embed) {
  const int n_r = std::max(3, static_cast<int>(std::ceil(radius / dt)));
  const int n_s = std::max(8, static_cast<int>(std::ceil(2.0 * std::numbers::pi * radius / dt)));
  const int base = static_cast<int>(vertices.size());
  vertices.push_back(embed(complexd(0, 0)));
  for (int i = 1; i <= n_r; ++i) {
    const double r = radius * i / n_r;
    for (int j = 0; j < n_s; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n_s;
      vertices.push_back(embed(complexd(r * std::cos(th), r * std::sin(th))));
    }
  }
  auto ring = [&](int i, int j) { return base + 1 + (i - 1) * n_s + (j % n_s); };
  for (int j = 0; j < n_s; ++j)
    faces.push_back({base, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i < n_r; ++i) {
    for (int j = 0; j < n_s; ++j) {
      faces.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      faces.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  }
}

double sheet_height(const FamilySpec& spec, int sheet) {
  return (sheet - 0.5 * (spec.sheets - 1)) * spec.sheet_spacing;
}

complexd eval_poly(const std::vector<complexd>& coeffs, complexd z) {
  complexd acc(0, 0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

DiscreteCurve generate_flat_sheets(const FamilySpec& spec) {
  if (spec.sheets < 1) throw error("flat_sheets: sheet count must be >= 1");
  std::vector<PointC2> vertices;
  std::vector<Face> faces;
  const double R = 1.0 + spec.margin;
  for (int s = 0; s < spec.sheets; ++s) {
    const complexd w = spec.sheet_offset + complexd(sheet_height(spec, s), 0.0);
    append_square_sheet(vertices, faces, R, spec.resolution, spec.half_plane_clip, false,
                        [&](complexd) { return w; });
  }
  return make_curve(std::move(vertices), std::move(faces), "flat_sheets");
}

DiscreteCurve generate_poly_graph(const FamilySpec& spec) {
  std::vector<PointC2> vertices;
  std::vector<Face> faces;
  const double R = 1.0 + spec.margin;
  append_square_sheet(vertices, faces, R, spec.resolution, spec.half_plane_clip, false,
                      [&](complexd z) { return eval_poly(spec.poly_coeffs, z); });
  return make_curve(std::move(vertices), std::move(faces), "poly_graph");
}

DiscreteCurve generate_branched_cover(const FamilySpec& spec) {
  if (spec.degree < 1) throw error("branched_cover: degree must be >= 1");
  const int d = spec.degree;
  // The image disk must cover the unit square plus margin; the parameter
  // disk radius follows from |z - center| = |t|^d.
  const double image_radius = std::numbers::sqrt2 * (1.0 + spec.margin);
  const double t_radius = std::pow(image_radius, 1.0 / d);
  // Projected edge length is d |t|^(d-1) |dt|; size dt for the outer rim,
  // which automatically grades the projected mesh finer toward the branch
  // point.
  const double dt = spec.resolution / (d * std::pow(t_radius, d - 1));
  if (t_radius / dt < 3.0)
    throw error("branched_cover: resolution too coarse to represent the branch point");
  std::vector<PointC2> vertices;
  std::vector<Face> faces;
  append_disk(vertices, faces, t_radius, dt, [&](complexd t) {
    return PointC2{std::pow(t, d) + spec.branch_center, t};
  });
  return make_curve(std::move(vertices), std::move(faces), "branched_cover");
}

DiscreteCurve generate_handle_body(const FamilySpec& spec) {
  if (spec.tubes < 0) throw error("handle_body: tube count must be >= 0");
  if (spec.sheets != 2 && spec.sheets != 1)
    throw error("handle_body: built from two sheets");
  std::vector<PointC2> vertices;
  std::vector<Face> faces;
  const double R = 1.0 + spec.margin;
  const int n = std::max(2, static_cast<int>(std::ceil(2.0 * R / spec.resolution)));
  const double h = 2.0 * R / n;
  const double wa = +0.5 * spec.sheet_spacing;
  const double wb = -0.5 * spec.sheet_spacing;

  append_square_sheet(vertices, faces, R, spec.resolution,
                      std::numeric_limits<double>::infinity(), false,
                      [&](complexd) { return complexd(wa, 0); });
  const int b_base = static_cast<int>(vertices.size());
  // The lower sheet is reversed so the tube walls glue with a consistent
  // global orientation.
  append_square_sheet(vertices, faces, R, spec.resolution,
                      std::numeric_limits<double>::infinity(), true,
                      [&](complexd) { return complexd(wb, 0); });
  const int stride = n + 1;
  auto top = [&](int i, int j) { return i * stride + j; };
  auto bot = [&](int i, int j) { return b_base + i * stride + j; };

  // tubes+1 bridges: the first joins the sheets, each further one adds a
  // handle. Footprints are single grid quads on a regular position grid.
  const int n_bridges = spec.tubes + 1;
  const int n_t = std::max(1, static_cast<int>(std::ceil(std::sqrt(double(n_bridges)))));
  std::vector<std::pair<int, int>> quads;
  std::map<std::pair<int, int>, bool> taken;
  for (int a = 0; a < n_t && static_cast<int>(quads.size()) < n_bridges; ++a) {
    for (int b = 0; b < n_t && static_cast<int>(quads.size()) < n_bridges; ++b) {
      const double x = -spec.tube_spread + (a + 0.5) * 2.0 * spec.tube_spread / n_t;
      const double y = -spec.tube_spread + (b + 0.5) * 2.0 * spec.tube_spread / n_t;
      const int qi = static_cast<int>(std::floor((x + R) / h));
      const int qj = static_cast<int>(std::floor((y + R) / h));
      if (qi < 1 || qi >= n - 1 || qj < 1 || qj >= n - 1)
        throw error("handle_body: tube footprint outside the sheet interior");
      if (taken.count({qi, qj}))
        throw error("handle_body: resolution too coarse, tube footprints collide");
      taken[{qi, qj}] = true;
      quads.emplace_back(qi, qj);
    }
  }

  // Remove the two faces of each footprint quad on both sheets.
  std::vector<std::uint8_t> keep(faces.size(), 1);
  const int faces_per_sheet = static_cast<int>(faces.size()) / 2;
  auto quad_face0 = [&](int qi, int qj) { return 2 * (qi * n + qj); };
  for (auto [qi, qj] : quads) {
    const int f0 = quad_face0(qi, qj);
    keep[f0] = keep[f0 + 1] = 0;
    keep[faces_per_sheet + f0] = keep[faces_per_sheet + f0 + 1] = 0;
  }
  std::vector<Face> kept;
  kept.reserve(faces.size());
  for (std::size_t i = 0; i < faces.size(); ++i)
    if (keep[i]) kept.push_back(faces[i]);

  // Walls: for each directed hole edge (u -> v) of the top sheet as it
  // appears in the remaining faces, add (v, u, B(u)) and (v, B(u), B(v)).
  for (auto [qi, qj] : quads) {
    const int c0t = top(qi, qj), c1t = top(qi + 1, qj), c2t = top(qi + 1, qj + 1), c3t = top(qi, qj + 1);
    const int c0b = bot(qi, qj), c1b = bot(qi + 1, qj), c2b = bot(qi + 1, qj + 1), c3b = bot(qi, qj + 1);
    const int ut[4] = {c1t, c2t, c3t, c0t};
    const int vt[4] = {c0t, c1t, c2t, c3t};
    const int ub[4] = {c1b, c2b, c3b, c0b};
    const int vb[4] = {c0b, c1b, c2b, c3b};
    for (int e = 0; e < 4; ++e) {
      kept.push_back({vt[e], ut[e], ub[e]});
      kept.push_back({vt[e], ub[e], vb[e]});
    }
  }
  return make_curve(std::move(vertices), std::move(kept), "handle_body");
}

}  // namespace

DiscreteCurve generate(const FamilySpec& spec) {
  if (spec.resolution <= 0.0) throw error("mesh resolution must be positive");
  switch (spec.family) {
    case Family::flat_sheets: return generate_flat_sheets(spec);
    case Family::branched_cover: return generate_branched_cover(spec);
    case Family::poly_graph: return generate_poly_graph(spec);
    case Family::handle_body: return generate_handle_body(spec);
    case Family::from_file: return load_curve(spec.path);
  }
  throw error("unknown family");
}

std::vector<PointC2> sheet_oracle(const FamilySpec& spec, complexd base_point) {
  std::vector<PointC2> fiber;
  switch (spec.family) {
    case Family::flat_sheets:
      for (int s = 0; s < spec.sheets; ++s)
        fiber.push_back({base_point, spec.sheet_offset + complexd(sheet_height(spec, s), 0.0)});
      return fiber;
    case Family::poly_graph:
      fiber.push_back({base_point, eval_poly(spec.poly_coeffs, base_point)});
      return fiber;
    case Family::branched_cover: {
      const complexd rel = base_point - spec.branch_center;
      if (std::abs(rel) < 1e-9) throw error("sheet_oracle: base point is a branch value");
      const double r = std::pow(std::abs(rel), 1.0 / spec.degree);
      const double th = std::arg(rel);
      for (int j = 0; j < spec.degree; ++j) {
        const double a = (th + 2.0 * std::numbers::pi * j) / spec.degree;
        fiber.push_back({base_point, complexd(r * std::cos(a), r * std::sin(a))});
      }
      return fiber;
    }
    default:
      throw error("sheet_oracle: family has no closed-form fiber");
  }
}

std::vector<complexd> critical_values(const FamilySpec& spec) {
  if (spec.family == Family::branched_cover && spec.degree >= 2) return {spec.branch_center};
  return {};
}

}  // namespace lamina

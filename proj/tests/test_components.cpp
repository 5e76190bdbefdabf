#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "lamina/components.hpp"
#include "lamina/generators.hpp"
#include "lamina/graph.hpp"

using namespace lamina;
using namespace lamina::testing;

namespace {

struct Fixture {
  DiscreteCurve curve;
  ProjectionFrame frame = ProjectionFrame::from_direction({1, 0}, {0, 0});
  GridSpec grid;
  CutCurve cut;
};

Fixture make_fixture(const DiscreteCurve& curve, int k, std::uint64_t seed = 11,
                     std::vector<complexd> avoid = {}) {
  Fixture fx;
  fx.curve = curve;
  std::vector<complexd> pts(curve.vertices.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = fx.frame.project(curve.vertices[i]);
  JitterOptions opts;
  fx.grid = build_grid(k, seed, pts, avoid, opts);
  fx.grid.epsilon = default_epsilon(k);
  fx.cut = grid_cut(fx.curve, fx.frame, fx.grid, k);
  return fx;
}

}  // namespace

TEST_CASE("flat sheet over interior crosses: one covering graph each") {
  const Fixture fx = make_fixture(square_sheet(1.3, 40), 4);
  Decomposition d = decompose(fx.cut, 0);
  int interior = 0;
  for (std::size_t r = 0; r < d.regions.size(); ++r) {
    const Region& reg = d.regions[r];
    if (reg.kind != RegionKind::cross || reg.clipped) continue;
    ++interior;
    int comps = 0;
    for (const FiberComponent& c : d.components) {
      if (c.region != static_cast<int>(r)) continue;
      ++comps;
      CHECK(c.rel_boundary_length == 0.0);
      CHECK(c.projected_area == doctest::Approx(3.0 / 16.0).epsilon(1e-9));
      CHECK(c.euler == 1);
      CHECK(c.cls == ComponentClass::covering);
      for (double cover : c.alpha_cover) CHECK(cover == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK(comps == 1);
  }
  CHECK(interior == 4);  // (k-2)^2 at k=4
}

TEST_CASE("mass additivity and outside bucket") {
  const Fixture fx = make_fixture(square_sheet(1.3, 40), 4);
  const Decomposition d = decompose(fx.cut, 2);
  double total = 0.0;
  for (double a : fx.cut.face_signed_proj) total += std::abs(a);
  CHECK(d.q_mass + d.cross_mass + d.outside_mass == doctest::Approx(total).epsilon(1e-9));
  CHECK(d.outside_mass > 0.0);           // the sheet extends past the square
  CHECK(d.q_mass == doctest::Approx(1.0).epsilon(1e-9));  // family area
}

TEST_CASE("double cover: two components over crosses away from the branch") {
  FamilySpec spec;
  spec.family = Family::branched_cover;
  spec.degree = 2;
  spec.resolution = 0.04;
  const Fixture fx = make_fixture(generate(spec), 6, 19, critical_values(spec));
  Decomposition d = decompose(fx.cut, 0);
  const complexd branch = spec.branch_center;

  int checked = 0;
  for (std::size_t r = 0; r < d.regions.size(); ++r) {
    const Region& reg = d.regions[r];
    if (reg.kind != RegionKind::cross || reg.clipped) continue;
    // Skip crosses whose bounding box comes near the branch value.
    const double cx = fx.grid.cell_x(reg.gi) + 0.5 * fx.grid.cell_side();
    const double cy = fx.grid.cell_y(reg.gj) + 0.5 * fx.grid.cell_side();
    if (std::abs(cx - branch.real()) < 2.5 * fx.grid.cell_side() &&
        std::abs(cy - branch.imag()) < 2.5 * fx.grid.cell_side())
      continue;
    ++checked;
    int comps = 0;
    double total_a = 0.0;
    for (const FiberComponent& c : d.components) {
      if (c.region != static_cast<int>(r)) continue;
      ++comps;
      total_a += c.projected_area;
    }
    CHECK(comps == 2);
    CHECK(total_a == doctest::Approx(2.0 * reg.area).epsilon(0.01));
  }
  CHECK(checked > 0);
}

TEST_CASE("curve missing a region leaves it empty") {
  const Fixture fx = make_fixture(disk_graph(0.3, 0.02), 4);
  const Decomposition d = decompose(fx.cut, 0);
  // Corner cells are far outside the disk of radius 0.3.
  bool corner_empty = true;
  for (const FiberComponent& c : d.components) {
    const Region& reg = d.regions[c.region];
    if (reg.kind == RegionKind::q_cell && reg.gi == 0 && reg.gj == 0) corner_empty = false;
  }
  CHECK(corner_empty);
}

TEST_CASE("classification thresholds") {
  GridSpec grid;
  grid.k = 4;
  grid.epsilon = default_epsilon(4);
  Region cross_region{RegionKind::cross, 1, 1, 0, 3.0 / 16.0, false};
  FiberComponent c;

  SUBCASE("long boundary wins regardless of area") {
    c.rel_boundary_length = 2.0 * grid.epsilon / grid.k;
    c.projected_area = 1.0;
    CHECK(classify_cross_component(c, cross_region, grid) == ComponentClass::long_boundary);
  }
  SUBCASE("small by isoperimetric bound") {
    const double l = grid.epsilon / (2.0 * grid.k);
    c.rel_boundary_length = l;
    c.projected_area = l * l;
    CHECK(classify_cross_component(c, cross_region, grid) == ComponentClass::small);
  }
  SUBCASE("covering") {
    c.rel_boundary_length = 0.0;
    c.projected_area = 3.0 / 16.0;
    CHECK(classify_cross_component(c, cross_region, grid) == ComponentClass::covering);
  }
  SUBCASE("gap between small and covering is flagged") {
    const double l = grid.epsilon / (2.0 * grid.k);
    c.rel_boundary_length = l;
    c.projected_area = 0.4 * cross_region.area;  // too big for small, too small for covering
    CHECK(c.projected_area > 4.0 * l * l);
    CHECK(c.projected_area < (1.0 - grid.epsilon) * cross_region.area);
    CHECK(classify_cross_component(c, cross_region, grid) == ComponentClass::other);
  }
}

TEST_CASE("islands: flat sheet gives one degree-1 island per cell") {
  const Fixture fx = make_fixture(square_sheet(1.3, 40), 4);
  for (int family = 0; family < 4; ++family) {
    Decomposition d = decompose(fx.cut, family);
    detect_islands(d);
    int islands = 0;
    for (const FiberComponent& c : d.components) {
      if (d.regions[c.region].kind != RegionKind::q_cell) continue;
      CHECK(c.cls == ComponentClass::island);
      CHECK(c.projected_area == doctest::Approx(d.regions[c.region].area).epsilon(1e-9));
      ++islands;
    }
    CHECK(islands == 16);  // k^2 cells per family
  }
}

TEST_CASE("islands of the double cover and the ramified branch cell") {
  FamilySpec spec;
  spec.family = Family::branched_cover;
  spec.degree = 2;
  spec.resolution = 0.03;
  const Fixture fx = make_fixture(generate(spec), 4, 19, critical_values(spec));
  const complexd branch = spec.branch_center;

  int ramified = 0, plain = 0;
  for (int family = 0; family < 4; ++family) {
    Decomposition d = decompose(fx.cut, family);
    detect_islands(d);
    for (const FiberComponent& c : d.components) {
      const Region& reg = d.regions[c.region];
      if (reg.kind != RegionKind::q_cell) continue;
      const bool has_branch = branch.real() > fx.grid.cell_x(reg.gi) &&
                              branch.real() < fx.grid.cell_x(reg.gi + 1) &&
                              branch.imag() > fx.grid.cell_y(reg.gj) &&
                              branch.imag() < fx.grid.cell_y(reg.gj + 1);
      if (has_branch) {
        CHECK(c.cls == ComponentClass::ramified_island);
        CHECK(c.projected_area / reg.area == doctest::Approx(2.0).epsilon(0.05));
        ++ramified;
      } else if (c.cls == ComponentClass::island) {
        CHECK(c.projected_area / reg.area == doctest::Approx(1.0).epsilon(0.05));
        ++plain;
      }
    }
  }
  CHECK(ramified == 1);
  // Every non-branch cell hosts exactly two islands: 4k^2 - 1 cells.
  CHECK(plain == 2 * (4 * 16 - 1));
}

TEST_CASE("pruning removes a pinched bubble and respects the mass bound") {
  // Flat sheet plus a tiny floating disk over an interior cross.
  const int k = 4;
  std::vector<PointC2> verts;
  std::vector<Face> faces;
  const DiscreteCurve sheet = square_sheet(1.3, 40);
  verts = sheet.vertices;
  faces = sheet.faces;
  const double rb = 0.012;
  const DiscreteCurve bubble = disk_graph(rb, 0.004, complexd(0.31, 0.0));
  const int base = static_cast<int>(verts.size());
  // Recenter the bubble over (0.31, 0.31), far from the square boundary.
  for (PointC2 p : bubble.vertices) {
    p.z += complexd(0.31, 0.31);
    verts.push_back(p);
  }
  for (Face f : bubble.faces) faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  const DiscreteCurve curve = make_curve(std::move(verts), std::move(faces));

  const Fixture fx = make_fixture(curve, k, 23);
  Decomposition d = decompose(fx.cut, 0);

  int small = 0;
  for (const FiberComponent& c : d.components)
    if (c.cls == ComponentClass::small) ++small;
  CHECK(small >= 1);

  const int q_components_before = [&] {
    int n = 0;
    for (const FiberComponent& c : d.components)
      if (d.regions[c.region].kind == RegionKind::q_cell) ++n;
    return n;
  }();

  std::vector<std::uint8_t> mask(fx.cut.mesh.faces.size(), 1);
  const double L_n = compute_stats(curve).boundary_length;
  const PruneReport rep = prune_small(d, L_n, mask);
  CHECK(rep.removed_components == small);
  CHECK(rep.removed_mass == doctest::Approx(std::numbers::pi * rb * rb).epsilon(0.05));
  CHECK(rep.mass_bound_ok);
  CHECK(rep.curve_bound_ok);

  // Re-extraction after pruning: no SMALL left, Q components untouched.
  Decomposition d2 = decompose(fx.cut, 0, {}, mask);
  int q_components_after = 0;
  for (const FiberComponent& c : d2.components) {
    CHECK(c.cls != ComponentClass::small);
    if (d2.regions[c.region].kind == RegionKind::q_cell) ++q_components_after;
  }
  CHECK(q_components_after == q_components_before);

  // Graph bookkeeping stays exact on the pruned mesh.
  detect_islands(d2);
  const CountingGraph g = build_graph(fx.cut, d2, mask);
  CHECK(g.handshake_ok);
  CHECK(g.euler_agreement_ok);
  const int chi_pruned = euler_of_faces(fx.cut.mesh, mask);
  int islands = 0;
  for (const FiberComponent& c : d2.components)
    if (c.cls == ComponentClass::island || c.cls == ComponentClass::ramified_island) ++islands;
  CHECK(island_lower_bound(g, chi_pruned, islands).ok);
}

TEST_CASE("select_q: uniform cover ties to family 0, min below mean") {
  const Fixture fx = make_fixture(square_sheet(1.3, 40), 4);
  GridSpec grid = select_q(fx.cut);
  CHECK(grid.q_family == 0);
  double mean = 0.0;
  for (double m : grid.family_mass) mean += m / 4.0;
  CHECK(grid.family_mass[grid.q_family] <= mean + 1e-12);
  for (double m : grid.family_mass) CHECK(m == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("select_q: double cover has mean sheet number two per family") {
  FamilySpec spec;
  spec.family = Family::branched_cover;
  spec.degree = 2;
  spec.resolution = 0.04;
  const Fixture fx = make_fixture(generate(spec), 4, 19, critical_values(spec));
  const GridSpec grid = select_q(fx.cut);
  for (double m : grid.family_mass) CHECK(m == doctest::Approx(2.0).epsilon(0.01));
  double mean = 0.0;
  for (double m : grid.family_mass) mean += m / 4.0;
  CHECK(grid.family_mass[grid.q_family] <= mean + 1e-12);
}

TEST_CASE("half-covered square: least covered family is below the mean") {
  FamilySpec spec;
  spec.sheets = 1;
  spec.resolution = 0.05;
  spec.half_plane_clip = -0.2;
  const Fixture fx = make_fixture(generate(spec), 4, 29);
  const GridSpec grid = select_q(fx.cut);
  double mean = 0.0, mx = 0.0;
  for (double m : grid.family_mass) {
    mean += m / 4.0;
    mx = std::max(mx, m);
  }
  CHECK(grid.family_mass[grid.q_family] <= mean + 1e-12);
  CHECK(mean <= mx + 1e-12);
}

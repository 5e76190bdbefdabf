#include <doctest.h>

#include <cmath>
#include <map>

#include "helpers.hpp"
#include "lamina/generators.hpp"
#include "lamina/grid.hpp"

using namespace lamina;
using namespace lamina::testing;

TEST_CASE("grid arithmetic") {
  SUBCASE("k=1: 4 cells, four families of one") {
    GridSpec g;
    g.k = 1;
    CHECK(g.cells_per_side() == 2);
    std::map<int, int> family_count;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) family_count[g.family_of_cell(i, j)]++;
    CHECK(family_count.size() == 4);
    for (auto& [f, n] : family_count) CHECK(n == 1);
  }
  SUBCASE("k=2: 16 cells of side 1/2") {
    GridSpec g;
    g.k = 2;
    CHECK(g.cells_per_side() * g.cells_per_side() == 16);
    CHECK(g.cell_side() == doctest::Approx(0.5));
  }
  SUBCASE("k=8: 256 cells, family area 1, C-Q area 3") {
    GridSpec g;
    g.k = 8;
    CHECK(g.cells_per_side() * g.cells_per_side() == 256);
    const double family_area = 64 * g.cell_side() * g.cell_side();
    CHECK(family_area == doctest::Approx(1.0));
    CHECK(4.0 - family_area == doctest::Approx(3.0));
  }
}

TEST_CASE("epsilon schedule decreases") {
  CHECK(default_epsilon(1) == doctest::Approx(1.0 / std::log(4.0)));
  CHECK(default_epsilon(4) > default_epsilon(8));
  CHECK(default_epsilon(8) > default_epsilon(16));
  CHECK(default_epsilon(1) < 1.0);
  CHECK(default_epsilon(1024) > 0.0);
}

TEST_CASE("cross paving per family") {
  for (int family = 0; family < 4; ++family) {
    for (int k : {1, 2, 3, 4}) {
      GridSpec g;
      g.k = k;
      g.epsilon = default_epsilon(k);
      const std::vector<Cross> crosses = build_crosses(g, family);
      CHECK(static_cast<int>(crosses.size()) == k * k);
      double total = 0.0;
      for (const Cross& cr : crosses) {
        total += cr.area;
        if (!cr.clipped) {
          CHECK(cr.area == doctest::Approx(3.0 / (k * k)).epsilon(1e-12));
          int alphas = 0;
          for (const auto& al : cr.alpha) alphas += al.present ? 1 : 0;
          CHECK(alphas == 4);
        }
      }
      // The crosses tile C - Q: total area 3.
      CHECK(total == doctest::Approx(3.0).epsilon(1e-12));

      // Alpha-side involution: every present side is shared with exactly one
      // other cross, which points back.
      for (std::size_t c = 0; c < crosses.size(); ++c) {
        for (int s = 0; s < 4; ++s) {
          if (!crosses[c].alpha[s].present) continue;
          const int nb = crosses[c].alpha[s].neighbor;
          REQUIRE(nb >= 0);
          REQUIRE(nb < static_cast<int>(crosses.size()));
          int back = 0;
          for (int t = 0; t < 4; ++t)
            if (crosses[nb].alpha[t].present && crosses[nb].alpha[t].neighbor == static_cast<int>(c))
              ++back;
          CHECK(back == 1);
          // Sides have length 1/k.
          const auto& al = crosses[c].alpha[s];
          const double len = std::hypot(al.x1 - al.x0, al.y1 - al.y0);
          CHECK(len == doctest::Approx(1.0 / k).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("k=1 cross has every arm clipped") {
  GridSpec g;
  g.k = 1;
  const std::vector<Cross> crosses = build_crosses(g, 0);
  REQUIRE(crosses.size() == 1);
  CHECK(crosses[0].clipped);
  CHECK(crosses[0].area == doctest::Approx(3.0));
  for (const auto& al : crosses[0].alpha) CHECK_FALSE(al.present);
}

TEST_CASE("jitter clears grid lines and critical values") {
  const DiscreteCurve c = square_sheet(1.25, 40);
  const ProjectionFrame frame = ProjectionFrame::from_direction({1, 0}, {0, 0});
  std::vector<complexd> pts(c.vertices.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = frame.project(c.vertices[i]);
  const std::vector<complexd> avoid = {complexd(0.0, 0.0)};

  JitterOptions opts;
  opts.clearance = 1e-6;
  const GridSpec g = build_grid(8, 77, pts, avoid, opts);
  const double pitch = 1.0 / 16.0;
  auto lattice_dist = [&](double x, double base) {
    double u = std::fmod(x - base, pitch);
    if (u < 0) u += pitch;
    return std::min(u, pitch - u);
  };
  for (const complexd& p : pts) {
    CHECK(lattice_dist(p.real(), g.origin_x()) > 1e-6);
    CHECK(lattice_dist(p.imag(), g.origin_y()) > 1e-6);
  }
  CHECK(lattice_dist(0.0, g.origin_x()) > 1e-6);

  // Determinism: same seed, same jitter.
  const GridSpec g2 = build_grid(8, 77, pts, avoid, opts);
  CHECK(g2.jitter_x == g.jitter_x);
  CHECK(g2.jitter_y == g.jitter_y);
}

TEST_CASE("projection frame is unitary") {
  const ProjectionFrame f = ProjectionFrame::from_direction({0.6, 0.3}, {-0.2, 0.7});
  CHECK(f.unitary_defect() < 1e-12);
  // The unitary sends the direction to (1, 0).
  const PointC2 d{f.dir_z, f.dir_w};
  const PointC2 r = f.rotate(d);
  CHECK(std::abs(r.z - complexd(1, 0)) < 1e-12);
  CHECK(std::abs(r.w) < 1e-12);
}

TEST_CASE("choose_direction picks the graph axis for a flat sheet") {
  const DiscreteCurve c = square_sheet(1.0, 24);
  const ProjectionFrame f = choose_direction(c, 32, 5);
  CHECK(f.dir_z == complexd(1, 0));
  CHECK(f.dir_w == complexd(0, 0));
  CHECK(f.omega_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("choose_direction avoids the fiber direction") {
  // A vertical disk {z = 0}: the (1,0) direction projects it to a point.
  std::vector<PointC2> verts;
  std::vector<Face> faces;
  const DiscreteCurve flat = disk_graph(0.9, 0.05);
  for (const PointC2& p : flat.vertices) verts.push_back({p.w, p.z});  // swap coords
  for (Face f : flat.faces) faces.push_back({f[0], f[2], f[1]});
  const DiscreteCurve vertical = make_curve(std::move(verts), std::move(faces));
  const ProjectionFrame f = choose_direction(vertical, 16, 5);
  CHECK(std::abs(f.dir_w) > 0.9);  // picked (close to) the w axis
  CHECK(f.omega_mass > 0.9);
}

TEST_CASE("two flat sheets have relative mass one") {
  std::vector<PointC2> verts;
  std::vector<Face> faces;
  for (complexd w : {complexd(0.2, 0), complexd(-0.2, 0)}) {
    const DiscreteCurve sheet = square_sheet(1.0, 20, w);
    const int base = static_cast<int>(verts.size());
    verts.insert(verts.end(), sheet.vertices.begin(), sheet.vertices.end());
    for (Face f : sheet.faces) faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  }
  const DiscreteCurve c = make_curve(std::move(verts), std::move(faces));
  const ProjectionFrame f = choose_direction(c, 8, 3);
  CHECK(f.omega_mass == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("empty curve has no direction") {
  DiscreteCurve empty;
  CHECK_THROWS_AS(choose_direction(empty, 4, 1), error);
}

#include <doctest.h>

#include <numbers>

#include "helpers.hpp"
#include "lamina/generators.hpp"
#include "lamina/mesh.hpp"
#include "lamina/mesh_io.hpp"

using namespace lamina;
using namespace lamina::testing;

TEST_CASE("single triangle file") {
  const std::string text =
      R"({"vertices": [[0,0,0,0],[1,0,0,0],[0,1,0,0]], "faces": [[0,1,2]], "name": "tri"})";
  const DiscreteCurve c = curve_from_json(text);
  CHECK(c.vertices.size() == 3);
  CHECK(c.faces.size() == 1);
  const CurveStats s = compute_stats(c);
  CHECK(s.edge_count == 3);
  CHECK(s.boundary_count == 1);
  CHECK(s.euler_characteristic == 1);
  CHECK(s.genus == 0);
}

TEST_CASE("octahedron closed sphere") {
  const CurveStats s = compute_stats(octahedron());
  CHECK(s.vertex_count == 6);
  CHECK(s.edge_count == 12);
  CHECK(s.face_count == 8);
  CHECK(s.euler_characteristic == 2);
  CHECK(s.boundary_count == 0);
  CHECK(s.genus == 0);
}

TEST_CASE("non-manifold edge rejected") {
  std::vector<PointC2> v = {{{0, 0}, {0, 0}},
                            {{1, 0}, {0, 0}},
                            {{0, 1}, {0, 0}},
                            {{0, 0}, {1, 0}},
                            {{0, 0}, {0, 1}}};
  std::vector<Face> f = {{0, 1, 2}, {1, 0, 3}, {0, 1, 4}};
  CHECK_THROWS_WITH_AS(make_curve(v, f), doctest::Contains("non-manifold"), error);
}

TEST_CASE("inconsistent orientation rejected") {
  std::vector<PointC2> v = {{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}, {{0, 1}, {0, 0}}, {{1, 1}, {0, 0}}};
  std::vector<Face> f = {{0, 1, 2}, {0, 1, 3}};  // both use 0->1
  CHECK_THROWS_WITH_AS(make_curve(v, f), doctest::Contains("orientation"), error);
}

TEST_CASE("degenerate face rejected") {
  std::vector<PointC2> v = {{{0, 0}, {0, 0}}, {{1, 0}, {0, 0}}, {{2, 0}, {0, 0}}};
  std::vector<Face> f = {{0, 1, 2}};
  CHECK_THROWS_WITH_AS(make_curve(v, f), doctest::Contains("degenerate"), error);
}

TEST_CASE("flat square graph stats") {
  const DiscreteCurve c = square_sheet(1.0, 16);  // side 2
  const CurveStats s = compute_stats(c);
  CHECK(s.area == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(s.genus == 0);
  CHECK(s.boundary_count == 1);
  CHECK(s.euler_characteristic == 1);
  CHECK(s.holomorphy_residual == doctest::Approx(0.0));
}

TEST_CASE("torus stats") {
  const CurveStats s = compute_stats(torus());
  CHECK(s.euler_characteristic == 0);
  CHECK(s.genus == 1);
  CHECK(s.boundary_count == 0);
}

TEST_CASE("genus 2 with 3 boundary loops") {
  // Two sheets joined by three tubes (genus 2), then one quad punched out.
  FamilySpec spec;
  spec.family = Family::handle_body;
  spec.sheets = 2;
  spec.tubes = 2;
  spec.resolution = 0.1;
  DiscreteCurve c = generate(spec);
  std::vector<std::uint8_t> keep(c.faces.size(), 1);
  // Remove an interior quad pair of the top sheet far from the tubes.
  int removed = 0;
  for (std::size_t fi = 0; fi + 1 < c.faces.size() && removed == 0; fi += 2) {
    const Face& a = c.faces[fi];
    const Face& b = c.faces[fi + 1];
    const PointC2 pa = c.vertices[a[0]];
    if (pa.w.real() < 0) continue;  // stay on the top sheet
    if (std::abs(pa.z.real() - 1.0) < 0.05 && std::abs(pa.z.imag() - 1.0) < 0.05 && a[0] == b[0]) {
      keep[fi] = keep[fi + 1] = 0;
      removed = 1;
    }
  }
  REQUIRE(removed == 1);
  const CurveStats s = compute_stats(extract_submesh(c, keep));
  CHECK(s.genus == 2);
  CHECK(s.boundary_count == 3);
  CHECK(s.euler_characteristic == -5);
}

TEST_CASE("slice flat disk at half radius") {
  const DiscreteCurve c = disk_graph(1.0, 0.02);
  const SliceResult res = slice_by_sphere(c, 0.5);
  CHECK_FALSE(res.missed);
  const CurveStats inner = compute_stats(res.inside);
  const CurveStats outer = compute_stats(res.outside);
  const CurveStats total = compute_stats(c);
  // Analytic circle of radius 1/2 has length pi.
  CHECK(inner.boundary_length == doctest::Approx(std::numbers::pi).epsilon(0.01));
  CHECK(inner.boundary_count == 1);
  CHECK(inner.genus == 0);
  // Exact area split.
  CHECK(inner.area + outer.area == doctest::Approx(total.area).epsilon(1e-9));
}

TEST_CASE("slice with curve strictly inside") {
  const DiscreteCurve c = disk_graph(1.0, 0.05);
  const SliceResult res = slice_by_sphere(c, 2.0);
  CHECK_FALSE(res.missed);
  CHECK(res.inside.faces.size() == c.faces.size());
  CHECK(res.outside.faces.empty());
  const CurveStats a = compute_stats(res.inside);
  const CurveStats b = compute_stats(c);
  CHECK(a.area == doctest::Approx(b.area).epsilon(1e-12));
}

TEST_CASE("slice misses the curve entirely") {
  const DiscreteCurve c = disk_graph(1.0, 0.05, complexd(5.0, 0.0));  // |w| = 5 everywhere
  const SliceResult res = slice_by_sphere(c, 1.0);
  CHECK(res.missed);
  CHECK(res.inside.faces.empty());
}

TEST_CASE("two parallel sheets sliced give two disks") {
  std::vector<PointC2> verts;
  std::vector<Face> faces;
  for (complexd w : {complexd(0.1, 0), complexd(-0.1, 0)}) {
    const DiscreteCurve sheet = disk_graph(1.0, 0.05, w);
    const int base = static_cast<int>(verts.size());
    verts.insert(verts.end(), sheet.vertices.begin(), sheet.vertices.end());
    for (Face f : sheet.faces) faces.push_back({f[0] + base, f[1] + base, f[2] + base});
  }
  const DiscreteCurve c = make_curve(std::move(verts), std::move(faces));
  const SliceResult res = slice_by_sphere(c, 0.5);
  const CurveStats s = compute_stats(res.inside);
  CHECK(s.component_count == 2);
  CHECK(s.boundary_count == 2);
  CHECK(s.genus == 0);
  CHECK(s.euler_characteristic == 2);
}

TEST_CASE("mesh json round trip is byte identical") {
  const DiscreteCurve c = square_sheet(1.0, 4, complexd(0.125, -0.25));
  const std::string once = curve_to_json(c);
  const DiscreteCurve back = curve_from_json(once);
  const std::string twice = curve_to_json(back);
  CHECK(once == twice);
  REQUIRE(back.vertices.size() == c.vertices.size());
  for (std::size_t i = 0; i < c.vertices.size(); ++i) {
    CHECK(back.vertices[i].z == c.vertices[i].z);
    CHECK(back.vertices[i].w == c.vertices[i].w);
  }
  CHECK(back.faces == c.faces);
}

TEST_CASE("quads in input are split") {
  const std::string text =
      R"({"vertices": [[0,0,0,0],[1,0,0,0],[1,1,0,0],[0,1,0,0]], "faces": [[0,1,2,3]]})";
  const DiscreteCurve c = curve_from_json(text);
  CHECK(c.faces.size() == 2);
  const CurveStats s = compute_stats(c);
  CHECK(s.euler_characteristic == 1);
}

TEST_CASE("parse failure reported") {
  CHECK_THROWS_AS(curve_from_json("{not json"), error);
  CHECK_THROWS_AS(curve_from_json(R"({"vertices": []})"), error);
}

#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "lamina/mesh.hpp"

namespace lamina::testing {

// Flat graph over the square [-R, R]^2 at constant w.
inline DiscreteCurve square_sheet(double R, int n, complexd w = {0, 0}) {
  std::vector<PointC2> verts;
  std::vector<Face> faces;
  const double h = 2.0 * R / n;
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) verts.push_back({complexd(-R + i * h, -R + j * h), w});
  auto vid = [&](int i, int j) { return i * (n + 1) + j; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return make_curve(std::move(verts), std::move(faces), "square_sheet");
}

// Flat graph over the disk of the given radius, ring mesh, constant w.
inline DiscreteCurve disk_graph(double radius, double edge, complexd w = {0, 0}) {
  std::vector<PointC2> verts;
  std::vector<Face> faces;
  const int n_r = std::max(3, static_cast<int>(std::ceil(radius / edge)));
  const int n_s = std::max(8, static_cast<int>(std::ceil(2 * std::numbers::pi * radius / edge)));
  verts.push_back({complexd(0, 0), w});
  for (int i = 1; i <= n_r; ++i) {
    const double r = radius * i / n_r;
    for (int j = 0; j < n_s; ++j) {
      const double th = 2 * std::numbers::pi * j / n_s;
      verts.push_back({complexd(r * std::cos(th), r * std::sin(th)), w});
    }
  }
  auto ring = [&](int i, int j) { return 1 + (i - 1) * n_s + (j % n_s); };
  for (int j = 0; j < n_s; ++j) faces.push_back({0, ring(1, j), ring(1, j + 1)});
  for (int i = 1; i < n_r; ++i) {
    for (int j = 0; j < n_s; ++j) {
      faces.push_back({ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
      faces.push_back({ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
    }
  }
  return make_curve(std::move(verts), std::move(faces), "disk_graph");
}

inline DiscreteCurve octahedron() {
  std::vector<PointC2> v = {
      {{1, 0}, {0, 0}}, {{-1, 0}, {0, 0}}, {{0, 1}, {0, 0}},
      {{0, -1}, {0, 0}}, {{0, 0}, {1, 0}}, {{0, 0}, {-1, 0}},
  };
  // px=0 mx=1 py=2 my=3 pz=4 mz=5, outward orientation
  std::vector<Face> f = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4},
                         {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  return make_curve(std::move(v), std::move(f), "octahedron");
}

// Torus of revolution in R^3 x {0}: the z-projection is an annulus, so the
// projected mass is positive (unlike the flat torus below).
inline DiscreteCurve donut(double R, double r, complexd center, int n = 16, int m = 12) {
  std::vector<PointC2> verts;
  std::vector<Face> faces;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double a = 2 * std::numbers::pi * i / n;
      const double b = 2 * std::numbers::pi * j / m;
      const double rad = R + r * std::cos(b);
      verts.push_back({center + complexd(rad * std::cos(a), rad * std::sin(a)),
                       complexd(r * std::sin(b), 0.0)});
    }
  }
  auto vid = [&](int i, int j) { return (i % n) * m + (j % m); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return make_curve(std::move(verts), std::move(faces), "donut");
}

inline DiscreteCurve torus(int n = 12, int m = 12) {
  std::vector<PointC2> verts;
  std::vector<Face> faces;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      const double a = 2 * std::numbers::pi * i / n;
      const double b = 2 * std::numbers::pi * j / m;
      verts.push_back({complexd(0.5 * std::cos(a), 0.5 * std::sin(a)),
                       complexd(0.5 * std::cos(b), 0.5 * std::sin(b))});
    }
  }
  auto vid = [&](int i, int j) { return (i % n) * m + (j % m); };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      faces.push_back({vid(i, j), vid(i + 1, j), vid(i + 1, j + 1)});
      faces.push_back({vid(i, j), vid(i + 1, j + 1), vid(i, j + 1)});
    }
  }
  return make_curve(std::move(verts), std::move(faces), "torus");
}

}  // namespace lamina::testing

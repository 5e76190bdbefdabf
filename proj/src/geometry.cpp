#include "lamina/geometry.hpp"

#include <algorithm>

namespace lamina {

double triangle_area(const PointC2& p0, const PointC2& p1, const PointC2& p2) {
  const PointC2 u = p1 - p0;
  const PointC2 v = p2 - p0;
  const double uu = dot4(u, u);
  const double vv = dot4(v, v);
  const double uv = dot4(u, v);
  const double g = uu * vv - uv * uv;  // Gram determinant
  return g > 0.0 ? 0.5 * std::sqrt(g) : 0.0;
}

double symplectic_area(const PointC2& p0, const PointC2& p1, const PointC2& p2) {
  return signed_area2(p0.z, p1.z, p2.z) + signed_area2(p0.w, p1.w, p2.w);
}

double holomorphy_deviation(const PointC2& p0, const PointC2& p1, const PointC2& p2) {
  const double a = triangle_area(p0, p1, p2);
  if (a <= 0.0) return 2.0;
  return std::clamp(1.0 - symplectic_area(p0, p1, p2) / a, 0.0, 2.0);
}

ProjectionFrame ProjectionFrame::from_direction(complexd dz, complexd dw) {
  const double n = std::sqrt(std::norm(dz) + std::norm(dw));
  ProjectionFrame f;
  f.dir_z = dz / n;
  f.dir_w = dw / n;
  return f;
}

double ProjectionFrame::unitary_defect() const {
  // Rows of U are (conj dz, conj dw) and (-dw, dz); U U* deviations reduce to
  // the norm defect of the direction (the rows are orthogonal by
  // construction).
  const double n2 = std::norm(dir_z) + std::norm(dir_w);
  return std::abs(n2 - 1.0);
}

}  // namespace lamina

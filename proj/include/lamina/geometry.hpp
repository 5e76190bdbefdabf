#pragma once

#include <cmath>
#include <complex>

namespace lamina {

using complexd = std::complex<double>;

// Point of a discretized curve: two complex coordinates (z, w) in C^2,
// identified with R^4 for metric computations.
struct PointC2 {
  complexd z{};
  complexd w{};
};

inline PointC2 operator+(const PointC2& a, const PointC2& b) { return {a.z + b.z, a.w + b.w}; }
inline PointC2 operator-(const PointC2& a, const PointC2& b) { return {a.z - b.z, a.w - b.w}; }
inline PointC2 operator*(double s, const PointC2& p) { return {s * p.z, s * p.w}; }

inline double dot4(const PointC2& a, const PointC2& b) {
  return a.z.real() * b.z.real() + a.z.imag() * b.z.imag() +
         a.w.real() * b.w.real() + a.w.imag() * b.w.imag();
}
inline double norm2_4(const PointC2& p) { return dot4(p, p); }
inline double norm4(const PointC2& p) { return std::sqrt(norm2_4(p)); }

// Flat-metric area of the triangle (p0, p1, p2) in R^4.
double triangle_area(const PointC2& p0, const PointC2& p1, const PointC2& p2);

// Signed area of a planar triangle, positive when counterclockwise.
inline double signed_area2(const complexd& a, const complexd& b, const complexd& c) {
  return 0.5 * ((b.real() - a.real()) * (c.imag() - a.imag()) -
                (b.imag() - a.imag()) * (c.real() - a.real()));
}

// Kahler area of the triangle: signed z-projection area plus signed
// w-projection area. Equals the R^4 area exactly when the triangle spans a
// positively oriented complex line.
double symplectic_area(const PointC2& p0, const PointC2& p1, const PointC2& p2);

// Deviation of the triangle plane from a complex line, in [0, 2].
// Zero for exactly holomorphic data.
double holomorphy_deviation(const PointC2& p0, const PointC2& p1, const PointC2& p2);

// Orthogonal projection frame: a unit direction in C^2 together with the
// unitary sending it to the first coordinate axis. project() returns the
// coordinate of a point in the projection plane.
struct ProjectionFrame {
  complexd dir_z{1.0, 0.0};
  complexd dir_w{0.0, 0.0};
  double omega_mass = 0.0;  // normalized projected mass measured for this frame

  static ProjectionFrame from_direction(complexd dz, complexd dw);

  complexd project(const PointC2& p) const {
    return std::conj(dir_z) * p.z + std::conj(dir_w) * p.w;
  }
  // Full unitary image; first coordinate equals project(p).
  PointC2 rotate(const PointC2& p) const {
    return {project(p), -dir_w * p.z + dir_z * p.w};
  }
  // Max entry deviation of U U* from the identity.
  double unitary_defect() const;

  double projected_signed_area(const PointC2& p0, const PointC2& p1, const PointC2& p2) const {
    return signed_area2(project(p0), project(p1), project(p2));
  }
};

}  // namespace lamina

#include "lamina/kernels.hpp"

namespace lamina::kernels {

namespace {

inline void face_points(const FaceSoup& soup, std::size_t f, PointC2& a, PointC2& b, PointC2& c) {
  const int* tri = soup.faces + 3 * f;
  a = soup.vertices[tri[0]];
  b = soup.vertices[tri[1]];
  c = soup.vertices[tri[2]];
}

}  // namespace

double total_area(const FaceSoup& soup) {
  return blocked_sum(soup.face_count, [&](std::size_t f) {
    PointC2 a, b, c;
    face_points(soup, f, a, b, c);
    return triangle_area(a, b, c);
  });
}

double total_area_serial(const FaceSoup& soup) {
  return serial_sum(soup.face_count, [&](std::size_t f) {
    PointC2 a, b, c;
    face_points(soup, f, a, b, c);
    return triangle_area(a, b, c);
  });
}

double projected_mass(const FaceSoup& soup, const ProjectionFrame& frame) {
  return blocked_sum(soup.face_count, [&](std::size_t f) {
    PointC2 a, b, c;
    face_points(soup, f, a, b, c);
    return std::abs(frame.projected_signed_area(a, b, c));
  });
}

double projected_mass_serial(const FaceSoup& soup, const ProjectionFrame& frame) {
  return serial_sum(soup.face_count, [&](std::size_t f) {
    PointC2 a, b, c;
    face_points(soup, f, a, b, c);
    return std::abs(frame.projected_signed_area(a, b, c));
  });
}

std::vector<double> direction_masses(const FaceSoup& soup, const std::vector<ProjectionFrame>& frames) {
  std::vector<double> out(frames.size(), 0.0);
#if defined(LAMINA_HAVE_OPENMP)
#pragma omp parallel for schedule(dynamic, 1)
#endif
  for (long long d = 0; d < static_cast<long long>(frames.size()); ++d) {
    // blocked_sum nests another parallel region only when OpenMP enables
    // nesting, which it does not by default; each direction is one task.
    out[static_cast<std::size_t>(d)] =
        projected_mass_serial(soup, frames[static_cast<std::size_t>(d)]);
  }
  return out;
}

std::vector<double> direction_masses_serial(const FaceSoup& soup,
                                            const std::vector<ProjectionFrame>& frames) {
  std::vector<double> out(frames.size(), 0.0);
  for (std::size_t d = 0; d < frames.size(); ++d) {
    out[d] = projected_mass_serial(soup, frames[d]);
  }
  return out;
}

void face_projected_data(const FaceSoup& soup, const ProjectionFrame& frame,
                         std::vector<double>& abs_area, std::vector<complexd>& centroid) {
  abs_area.resize(soup.face_count);
  centroid.resize(soup.face_count);
#if defined(LAMINA_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < static_cast<long long>(soup.face_count); ++i) {
    const std::size_t f = static_cast<std::size_t>(i);
    PointC2 a, b, c;
    face_points(soup, f, a, b, c);
    const complexd pa = frame.project(a), pb = frame.project(b), pc = frame.project(c);
    abs_area[f] = std::abs(signed_area2(pa, pb, pc));
    centroid[f] = (pa + pb + pc) / 3.0;
  }
}

void face_projected_data_serial(const FaceSoup& soup, const ProjectionFrame& frame,
                                std::vector<double>& abs_area, std::vector<complexd>& centroid) {
  abs_area.resize(soup.face_count);
  centroid.resize(soup.face_count);
  for (std::size_t f = 0; f < soup.face_count; ++f) {
    PointC2 a, b, c;
    face_points(soup, f, a, b, c);
    const complexd pa = frame.project(a), pb = frame.project(b), pc = frame.project(c);
    abs_area[f] = std::abs(signed_area2(pa, pb, pc));
    centroid[f] = (pa + pb + pc) / 3.0;
  }
}

}  // namespace lamina::kernels

#pragma once

#include <cstddef>
#include <vector>

#include "lamina/geometry.hpp"

// Data-parallel reductions over faces. Each kernel has an OpenMP variant and
// a serial reference used by the tests and the benchmark. The parallel
// variants accumulate fixed-size blocks and combine the partials in block
// order, so the result does not depend on the thread count.

namespace lamina::kernels {

inline constexpr std::size_t kBlockSize = 8192;

template <class F>
double serial_sum(std::size_t n, F&& term) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += term(i);
  return acc;
}

template <class F>
double blocked_sum(std::size_t n, F&& term) {
  if (n == 0) return 0.0;
  const std::size_t nblocks = (n + kBlockSize - 1) / kBlockSize;
  if (nblocks == 1) return serial_sum(n, term);
  std::vector<double> partial(nblocks, 0.0);
#if defined(LAMINA_HAVE_OPENMP)
#pragma omp parallel for schedule(static)
#endif
  for (long long b = 0; b < static_cast<long long>(nblocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlockSize;
    const std::size_t hi = lo + kBlockSize < n ? lo + kBlockSize : n;
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

struct FaceSoup {
  const PointC2* vertices = nullptr;
  const int* faces = nullptr;  // flat triples
  std::size_t face_count = 0;
};

// Sum of R^4 triangle areas.
double total_area(const FaceSoup& soup);
double total_area_serial(const FaceSoup& soup);

// Sum of |projected signed triangle area| for one frame (area of the
// projected image counted with multiplicity).
double projected_mass(const FaceSoup& soup, const ProjectionFrame& frame);
double projected_mass_serial(const FaceSoup& soup, const ProjectionFrame& frame);

// projected_mass for a batch of candidate frames.
std::vector<double> direction_masses(const FaceSoup& soup, const std::vector<ProjectionFrame>& frames);
std::vector<double> direction_masses_serial(const FaceSoup& soup, const std::vector<ProjectionFrame>& frames);

// Per-face |projected signed area| and projected centroid, used by the
// histogram-style accumulations (per-cell masses, current evaluation).
void face_projected_data(const FaceSoup& soup, const ProjectionFrame& frame,
                         std::vector<double>& abs_area, std::vector<complexd>& centroid);
void face_projected_data_serial(const FaceSoup& soup, const ProjectionFrame& frame,
                                std::vector<double>& abs_area, std::vector<complexd>& centroid);

}  // namespace lamina::kernels

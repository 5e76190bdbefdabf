// Benchmark of the OpenMP face kernels against their serial references.
// Build and run:  ./lamina_bench [resolution]

#include <chrono>
#include <cstdio>
#include <vector>

#include "lamina/generators.hpp"
#include "lamina/grid.hpp"
#include "lamina/kernels.hpp"

using clock_type = std::chrono::steady_clock;

namespace {

template <class F>
double time_ms(F&& fn, int repeats = 5) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = clock_type::now();
    fn();
    const auto t1 = clock_type::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  double resolution = 0.004;
  if (argc > 1) resolution = std::atof(argv[1]);

  lamina::FamilySpec spec;
  spec.family = lamina::Family::flat_sheets;
  spec.sheets = 2;
  spec.resolution = resolution;
  const lamina::DiscreteCurve curve = lamina::generate(spec);
  const auto soup = curve.soup();
  std::printf("curve: %zu faces, %zu vertices\n", soup.face_count, curve.vertices.size());

  const std::vector<lamina::ProjectionFrame> frames = lamina::direction_samples(16, 7);

  volatile double sink = 0.0;
  const double t_area_s = time_ms([&] { sink = lamina::kernels::total_area_serial(soup); });
  const double area_serial = lamina::kernels::total_area_serial(soup);
  const double t_area_p = time_ms([&] { sink = lamina::kernels::total_area(soup); });
  const double area_parallel = lamina::kernels::total_area(soup);

  const double t_mass_s =
      time_ms([&] { sink = lamina::kernels::projected_mass_serial(soup, frames[0]); });
  const double t_mass_p = time_ms([&] { sink = lamina::kernels::projected_mass(soup, frames[0]); });

  const double t_dirs_s =
      time_ms([&] { sink = lamina::kernels::direction_masses_serial(soup, frames)[0]; });
  const double t_dirs_p = time_ms([&] { sink = lamina::kernels::direction_masses(soup, frames)[0]; });

  std::vector<double> abs_area;
  std::vector<lamina::complexd> centroid;
  const double t_data_s = time_ms(
      [&] { lamina::kernels::face_projected_data_serial(soup, frames[0], abs_area, centroid); });
  const double t_data_p =
      time_ms([&] { lamina::kernels::face_projected_data(soup, frames[0], abs_area, centroid); });

  std::printf("%-24s %12s %12s %9s\n", "kernel", "serial (ms)", "openmp (ms)", "speedup");
  auto row = [](const char* name, double s, double p) {
    std::printf("%-24s %12.3f %12.3f %8.2fx\n", name, s, p, s / p);
  };
  row("total_area", t_area_s, t_area_p);
  row("projected_mass", t_mass_s, t_mass_p);
  row("direction_masses(16)", t_dirs_s, t_dirs_p);
  row("face_projected_data", t_data_s, t_data_p);
  std::printf("area serial vs parallel: %.17g vs %.17g (|diff| %.3g)\n", area_serial,
              area_parallel, std::abs(area_serial - area_parallel));
  (void)sink;
  return 0;
}

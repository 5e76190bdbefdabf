#include <doctest.h>

#include "helpers.hpp"
#include "lamina/generators.hpp"
#include "lamina/grid.hpp"
#include "lamina/kernels.hpp"
#include "lamina/rng.hpp"

using namespace lamina;
using namespace lamina::testing;

TEST_CASE("parallel kernels match the serial references") {
  FamilySpec spec;
  spec.sheets = 2;
  spec.resolution = 0.02;
  const DiscreteCurve c = generate(spec);
  const auto soup = c.soup();
  REQUIRE(soup.face_count > 20000);

  SUBCASE("total area") {
    const double s = kernels::total_area_serial(soup);
    const double p = kernels::total_area(soup);
    CHECK(p == doctest::Approx(s).epsilon(1e-12));
    CHECK(kernels::total_area(soup) == p);  // deterministic
  }

  SUBCASE("projected mass and direction batches") {
    const auto frames = direction_samples(12, 3);
    const auto serial = kernels::direction_masses_serial(soup, frames);
    const auto parallel = kernels::direction_masses(soup, frames);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i)
      CHECK(parallel[i] == doctest::Approx(serial[i]).epsilon(1e-12));
    CHECK(kernels::projected_mass(soup, frames[0]) ==
          doctest::Approx(kernels::projected_mass_serial(soup, frames[0])).epsilon(1e-12));
  }

  SUBCASE("face projected data") {
    const ProjectionFrame frame = ProjectionFrame::from_direction({1, 0}, {0, 0});
    std::vector<double> a1, a2;
    std::vector<complexd> c1, c2;
    kernels::face_projected_data_serial(soup, frame, a1, c1);
    kernels::face_projected_data(soup, frame, a2, c2);
    REQUIRE(a1.size() == a2.size());
    for (std::size_t i = 0; i < a1.size(); ++i) {
      CHECK(a1[i] == a2[i]);
      CHECK(c1[i] == c2[i]);
    }
  }
}

TEST_CASE("blocked sum is deterministic and near the serial sum") {
  std::vector<double> data(200003);
  SplitMix64 rng(5);
  for (double& x : data) x = rng.uniform(-1.0, 1.0);
  auto term = [&](std::size_t i) { return data[i]; };
  const double s = kernels::serial_sum(data.size(), term);
  const double b1 = kernels::blocked_sum(data.size(), term);
  const double b2 = kernels::blocked_sum(data.size(), term);
  CHECK(b1 == b2);
  CHECK(b1 == doctest::Approx(s).epsilon(1e-12));
}

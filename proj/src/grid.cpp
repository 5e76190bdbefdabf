#include "lamina/grid.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "lamina/kernels.hpp"
#include "lamina/rng.hpp"

namespace lamina {

double default_epsilon(int k) { return 1.0 / std::log(static_cast<double>(k) + 3.0); }

namespace {

// Distance to the infinite half-cell lattice {base + j * pitch}.
double lattice_distance(double x, double base, double pitch) {
  const double u = std::fmod(x - base, pitch);
  const double v = u < 0.0 ? u + pitch : u;
  return std::min(v, pitch - v);
}

}  // namespace

GridSpec build_grid(int k, std::uint64_t jitter_seed, std::span<const complexd> projected_points,
                    std::span<const complexd> avoid_values, const JitterOptions& opts) {
  if (k < 1) throw error("build_grid: k must be >= 1");
  const int lattice_k = opts.lattice_k > 0 ? opts.lattice_k : k;
  if (lattice_k % k != 0)
    throw error("build_grid: clearance lattice must refine the grid");
  const double pitch = 1.0 / (2.0 * lattice_k);
  const double amplitude = opts.amplitude > 0.0 ? opts.amplitude : pitch / 4.0;
  // Dense meshes fold many projected vertices into one lattice period; the
  // realizable clearance shrinks like pitch / vertex count.
  const double clearance =
      std::min(opts.clearance,
               0.05 * pitch / static_cast<double>(std::max<std::size_t>(projected_points.size(), 1)));
  const double avoid_clearance = std::max(clearance, 0.02 * pitch);

  SplitMix64 rng(jitter_seed ^ 0x9d1db5a7ULL);
  GridSpec grid;
  grid.k = k;
  grid.epsilon = default_epsilon(k);
  grid.clearance_used = clearance;

  for (int attempt = 0; attempt < opts.max_retries; ++attempt) {
    const double jx = attempt == 0 ? 0.5 * amplitude : rng.uniform(-amplitude, amplitude);
    const double jy = attempt == 0 ? -0.5 * amplitude : rng.uniform(-amplitude, amplitude);
    double min_clear = std::numeric_limits<double>::infinity();
    for (const complexd& p : projected_points) {
      min_clear = std::min(min_clear, lattice_distance(p.real(), -1.0 + jx, pitch));
      if (min_clear < clearance) break;
      min_clear = std::min(min_clear, lattice_distance(p.imag(), -1.0 + jy, pitch));
      if (min_clear < clearance) break;
    }
    if (min_clear < clearance) continue;
    bool ok = true;
    for (const complexd& c : avoid_values) {
      if (lattice_distance(c.real(), -1.0 + jx, pitch) < avoid_clearance ||
          lattice_distance(c.imag(), -1.0 + jy, pitch) < avoid_clearance) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    grid.jitter_x = jx;
    grid.jitter_y = jy;
    return grid;
  }
  throw error("build_grid: no jitter offset clears the grid lines after " +
              std::to_string(opts.max_retries) + " attempts (clearance " +
              std::to_string(clearance) + ")");
}

std::vector<Cross> build_crosses(const GridSpec& grid, int family) {
  if (family < 0 || family > 3) throw error("build_crosses: family out of range");
  const int n = grid.cells_per_side();
  const double s = grid.cell_side();
  const int pi = family / 2, pj = family % 2;
  const int ci0 = (pi + 1) % 2 == 0 ? 0 : 1;  // first center column parity
  const int cj0 = (pj + 1) % 2 == 0 ? 0 : 1;

  // Index map for neighbor lookups.
  std::map<std::pair<int, int>, int> index;
  std::vector<Cross> crosses;
  for (int ci = ci0; ci < n; ci += 2) {
    for (int cj = cj0; cj < n; cj += 2) {
      index[{ci, cj}] = static_cast<int>(crosses.size());
      crosses.push_back({});
      crosses.back().ci = ci;
      crosses.back().cj = cj;
    }
  }

  const double cell_area = s * s;
  for (Cross& cr : crosses) {
    const int ci = cr.ci, cj = cr.cj;
    const double xc = grid.cell_x(ci), yc = grid.cell_y(cj);
    double area = cell_area;

    // Arm directions: 0 = -x, 1 = +x, 2 = -y, 3 = +y.
    const int di[4] = {-1, 1, 0, 0};
    const int dj[4] = {0, 0, -1, 1};
    double XL = xc, XR = xc + s, YB = yc, YT = yc + s;  // bar extents
    for (int a = 0; a < 4; ++a) {
      const int ai = ci + di[a], aj = cj + dj[a];
      if (ai < 0 || ai >= n || aj < 0 || aj >= n) {
        cr.clipped = true;  // missing arm at the square boundary
        continue;
      }
      cr.arms[a].present = true;
      const int bi = ci + 2 * di[a], bj = cj + 2 * dj[a];
      const bool beyond = bi >= 0 && bi < n && bj >= 0 && bj < n;
      if (beyond) {
        area += 0.5 * cell_area;
        Cross::AlphaSide& al = cr.alpha[a];
        al.present = true;
        al.neighbor = index.at({bi, bj});
        const double ax = grid.cell_x(ai), ay = grid.cell_y(aj);
        if (a < 2) {  // vertical alpha side at the arm cell mid-line
          al.x0 = al.x1 = ax + 0.5 * s;
          al.y0 = ay;
          al.y1 = ay + s;
        } else {
          al.y0 = al.y1 = ay + 0.5 * s;
          al.x0 = ax;
          al.x1 = ax + s;
        }
      } else {
        // No cross beyond: the arm absorbs the whole neighbor cell and its
        // far side lies on the square boundary.
        area += cell_area;
        cr.arms[a].full_cell = true;
        cr.clipped = true;
      }
      const double half = cr.arms[a].full_cell ? s : 0.5 * s;
      if (a == 0) XL = xc - half;
      if (a == 1) XR = xc + s + half;
      if (a == 2) YB = yc - half;
      if (a == 3) YT = yc + s + half;
    }
    cr.area = area;

    // Boundary of the plus polygon = boundary of (horizontal bar) union
    // (vertical bar). Duplicate coincident segments when an arm is missing
    // are harmless for distance queries.
    auto seg = [&](double x0, double y0, double x1, double y1) {
      cr.boundary.push_back({x0, y0, x1, y1});
    };
    seg(XL, yc, XL, yc + s);
    seg(XR, yc, XR, yc + s);
    if (YT > yc + s) {
      seg(XL, yc + s, xc, yc + s);
      seg(xc + s, yc + s, XR, yc + s);
    } else {
      seg(XL, yc + s, XR, yc + s);
    }
    if (YB < yc) {
      seg(XL, yc, xc, yc);
      seg(xc + s, yc, XR, yc);
    } else {
      seg(XL, yc, XR, yc);
    }
    seg(xc, YB, xc + s, YB);
    seg(xc, YT, xc + s, YT);
    if (XL < xc) {
      seg(xc, YB, xc, yc);
      seg(xc, yc + s, xc, YT);
    } else {
      seg(xc, YB, xc, YT);
    }
    if (XR > xc + s) {
      seg(xc + s, YB, xc + s, yc);
      seg(xc + s, yc + s, xc + s, YT);
    } else {
      seg(xc + s, YB, xc + s, YT);
    }
  }
  return crosses;
}

std::vector<ProjectionFrame> direction_samples(int samples, std::uint64_t seed) {
  if (samples < 1) throw error("choose_direction: samples must be >= 1");
  std::vector<ProjectionFrame> frames;
  frames.reserve(samples);
  frames.push_back(ProjectionFrame::from_direction({1, 0}, {0, 0}));
  if (samples > 1) frames.push_back(ProjectionFrame::from_direction({0, 0}, {1, 0}));
  SplitMix64 rng(seed ^ 0xd1cec7105ULL);
  const double phi0 = 2.0 * std::numbers::pi * rng.uniform();
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 2; i < samples; ++i) {
    // Fibonacci spiral on the direction sphere CP^1.
    const double t = (i - 1.0) / (samples - 1.0);
    const double theta = std::acos(std::clamp(1.0 - 2.0 * t, -1.0, 1.0));
    const double phi = phi0 + golden * i;
    frames.push_back(ProjectionFrame::from_direction(
        {std::cos(0.5 * theta), 0.0},
        {std::sin(0.5 * theta) * std::cos(phi), std::sin(0.5 * theta) * std::sin(phi)}));
  }
  return frames;
}

ProjectionFrame choose_direction(const DiscreteCurve& curve, int samples, std::uint64_t seed) {
  std::vector<ProjectionFrame> frames = direction_samples(samples, seed);
  const double area = kernels::total_area(curve.soup());
  if (area <= 0.0) throw error("choose_direction: curve is empty");
  const std::vector<double> masses = kernels::direction_masses(curve.soup(), frames);
  int best = -1;
  double best_mass = 0.0;
  for (std::size_t i = 0; i < frames.size(); ++i) {
    if (masses[i] > best_mass) {
      best_mass = masses[i];
      best = static_cast<int>(i);
    }
  }
  if (best < 0 || best_mass <= 1e-15 * area)
    throw error("choose_direction: projected mass vanishes for every sampled direction");
  ProjectionFrame f = frames[best];
  f.omega_mass = best_mass / area;
  return f;
}

}  // namespace lamina

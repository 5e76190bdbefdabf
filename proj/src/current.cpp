#include "lamina/current.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lamina/kernels.hpp"

namespace lamina {

TestForm grid_sampled_form(std::vector<double> samples, int n, const GridSpec& grid) {
  if (n < 1 || static_cast<int>(samples.size()) != (n + 1) * (n + 1))
    throw error("grid_sampled_form: need (n+1)^2 samples");
  const double ox = grid.origin_x(), oy = grid.origin_y();
  const double h = 2.0 / n;
  return [samples = std::move(samples), n, ox, oy, h](double x, double y) {
    const double u = std::clamp((x - ox) / h, 0.0, static_cast<double>(n));
    const double v = std::clamp((y - oy) / h, 0.0, static_cast<double>(n));
    const int i = std::min(static_cast<int>(u), n - 1);
    const int j = std::min(static_cast<int>(v), n - 1);
    const double fu = u - i, fv = v - j;
    auto at = [&](int a, int b) { return samples[a * (n + 1) + b]; };
    return (1 - fu) * (1 - fv) * at(i, j) + fu * (1 - fv) * at(i + 1, j) +
           (1 - fu) * fv * at(i, j + 1) + fu * fv * at(i + 1, j + 1);
  };
}

CurrentApprox assemble(const CutCurve& cut, const std::array<Decomposition, 4>& families,
                       double curve_area, const Tolerances& tol) {
  (void)cut;
  if (curve_area <= 0.0) throw error("assemble: curve area must be positive");
  CurrentApprox cur;
  cur.weight = 1.0 / curve_area;
  cur.k = families[0].grid.k;
  const double cell_area = families[0].grid.cell_side() * families[0].grid.cell_side();

  std::vector<std::uint8_t> in_patch(cut.mesh.faces.size(), 0);
  for (int f = 0; f < 4; ++f) {
    const Decomposition& d = families[f];
    if (d.family != f) throw error("assemble: family decompositions out of order");
    for (const FiberComponent& c : d.components) {
      if (c.cls == ComponentClass::ramified_island) {
        ++cur.ramified_island_count;
        continue;
      }
      if (c.cls != ComponentClass::island) continue;
      const double degree = c.projected_area / cell_area;
      if (std::abs(degree - 1.0) > tol.island_degree_tol)
        throw error("assemble: island patch with multiplicity " + std::to_string(degree) +
                    " is not a graph");
      IslandPatch p;
      p.family = f;
      p.gi = d.regions[c.region].gi;
      p.gj = d.regions[c.region].gj;
      p.faces = c.faces;
      p.projected_area = c.projected_area;
      for (int face : p.faces) in_patch[face] = 1;
      cur.patches.push_back(std::move(p));
      ++cur.good_island_count;
    }
  }

  // One pass splits the in-square mass between patches and the rest, so the
  // defect is a sum of nonnegative terms: exactly >= 0.
  double patch_mass = 0.0, rest_mass = 0.0;
  for (std::size_t f = 0; f < cut.mesh.faces.size(); ++f) {
    if (families[0].face_region[f] < 0) continue;  // outside the square or pruned
    const double m = std::abs(cut.face_signed_proj[f]);
    if (in_patch[f])
      patch_mass += m;
    else
      rest_mass += m;
  }
  cur.mass_pi_omega = cur.weight * patch_mass;
  cur.curve_mass_in_square = cur.weight * (patch_mass + rest_mass);
  cur.defect = cur.weight * rest_mass;
  return cur;
}

double evaluate_curve(const CutCurve& cut, const std::array<Decomposition, 4>& families,
                      double curve_area, const TestForm& form) {
  // Faces over the square are exactly those assigned to a region in any
  // family; family 0's assignment answers the membership question.
  const Decomposition& d = families[0];
  const double sum = kernels::blocked_sum(cut.mesh.faces.size(), [&](std::size_t f) {
    if (d.face_region[f] < 0) return 0.0;
    const complexd c = cut.face_centroid[f];
    return form(c.real(), c.imag()) * std::abs(cut.face_signed_proj[f]);
  });
  return sum / curve_area;
}

double evaluate_curve_serial(const CutCurve& cut, const std::array<Decomposition, 4>& families,
                             double curve_area, const TestForm& form) {
  const Decomposition& d = families[0];
  const double sum = kernels::serial_sum(cut.mesh.faces.size(), [&](std::size_t f) {
    if (d.face_region[f] < 0) return 0.0;
    const complexd c = cut.face_centroid[f];
    return form(c.real(), c.imag()) * std::abs(cut.face_signed_proj[f]);
  });
  return sum / curve_area;
}

double evaluate(const CurrentApprox& current, const CutCurve& cut, const TestForm& form) {
  double sum = 0.0;
  for (const IslandPatch& p : current.patches) {
    sum += kernels::blocked_sum(p.faces.size(), [&](std::size_t i) {
      const int f = p.faces[i];
      const complexd c = cut.face_centroid[f];
      return form(c.real(), c.imag()) * std::abs(cut.face_signed_proj[f]);
    });
  }
  return current.weight * sum;
}

double transversal_measure(const CurrentApprox& current, const GridSpec& grid, complexd base_point) {
  const double s = grid.cell_side();
  const double u = (base_point.real() - grid.origin_x()) / s;
  const double v = (base_point.imag() - grid.origin_y()) / s;
  const int i = static_cast<int>(std::floor(u));
  const int j = static_cast<int>(std::floor(v));
  const double tol = 1e-9;
  if (i < 0 || i >= grid.cells_per_side() || j < 0 || j >= grid.cells_per_side())
    throw error("transversal_measure: base point outside the square");
  if (std::abs(u - std::round(u)) < tol || std::abs(v - std::round(v)) < tol)
    throw error("transversal_measure: base point on a cell boundary");
  int count = 0;
  for (const IslandPatch& p : current.patches)
    if (p.gi == i && p.gj == j) ++count;
  return current.weight * count;
}

void check_patch_nesting(const CurrentApprox& coarse, const CurrentApprox& fine, DefectTrend& trend) {
  trend.nesting_checked = true;
  if (fine.k % coarse.k != 0) throw error("check_patch_nesting: scales must nest");

  // Patches over one cell are disjoint, so each face has at most one owning
  // coarse patch. A fine patch lying inside a coarse one must be face-wise
  // contained; a fine patch over territory the coarse scale did not capture
  // owns no coarse faces at all.
  std::unordered_map<int, int> face_owner;
  for (std::size_t i = 0; i < coarse.patches.size(); ++i)
    for (int f : coarse.patches[i].faces) face_owner.emplace(f, static_cast<int>(i));

  for (const IslandPatch& p : fine.patches) {
    int owner = -2;
    for (int f : p.faces) {
      auto it = face_owner.find(f);
      const int o = it == face_owner.end() ? -1 : it->second;
      if (owner == -2) owner = o;
      if (owner != o) {
        trend.nesting_ok = false;
        throw error("check_patch_nesting: refined patch leaves its coarse patch");
      }
    }
    if (owner >= 0) ++trend.nested_patch_pairs;
  }
}

}  // namespace lamina

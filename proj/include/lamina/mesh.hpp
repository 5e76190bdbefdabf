#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "lamina/geometry.hpp"
#include "lamina/kernels.hpp"

namespace lamina {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Face = std::array<int, 3>;

// Triangulated oriented surface embedded in C^2. Instances produced by
// make_curve are validated (edge-manifold, consistently oriented, no
// degenerate faces) and treated as immutable afterwards.
struct DiscreteCurve {
  std::vector<PointC2> vertices;
  std::vector<Face> faces;
  std::string name;

  kernels::FaceSoup soup() const {
    return {vertices.data(), faces.empty() ? nullptr : faces[0].data(), faces.size()};
  }
};

// Validates and compacts (drops unreferenced vertices). Throws lamina::error
// on out-of-range indices, degenerate faces, non-manifold edges or
// inconsistent orientation. Internally produced meshes (slice and grid cuts)
// skip the degenerate-area check, which guards input files only.
DiscreteCurve make_curve(std::vector<PointC2> vertices, std::vector<Face> faces,
                         std::string name = "", bool reject_degenerate = true);

struct MeshEdge {
  int a = 0, b = 0;    // a < b
  int f0 = -1, f1 = -1;  // incident faces, f1 = -1 on boundary
};

struct MeshTopology {
  std::vector<MeshEdge> edges;
  std::vector<int> vertex_component;            // component id per vertex
  std::vector<int> face_component;              // component id per face
  int component_count = 0;
  std::vector<std::vector<int>> boundary_loops;  // vertex cycles
  std::vector<int> loop_component;
};

// Assumes a validated curve.
MeshTopology build_topology(const DiscreteCurve& curve);

struct ComponentStats {
  int vertex_count = 0;
  int edge_count = 0;
  int face_count = 0;
  int boundary_loops = 0;
  int euler = 0;
  int genus = 0;
  double area = 0.0;
  double boundary_length = 0.0;
};

struct CurveStats {
  double area = 0.0;
  int genus = 0;
  int boundary_count = 0;
  double boundary_length = 0.0;
  int euler_characteristic = 0;
  double holomorphy_residual = 0.0;
  int component_count = 0;
  int vertex_count = 0;
  int edge_count = 0;
  int face_count = 0;
  std::vector<ComponentStats> components;
};

CurveStats compute_stats(const DiscreteCurve& curve);

// Low-level sphere cut: every face is split along |z|^2 + |w|^2 = r^2 and
// tagged inside/outside. The radius is nudged deterministically off mesh
// vertices. Keeps one mesh so callers can glue across the cut.
struct SphereCut {
  DiscreteCurve mesh;
  std::vector<std::uint8_t> face_inside;
  double radius_used = 0.0;
};

SphereCut cut_by_sphere(const DiscreteCurve& curve, double radius, std::uint64_t seed = 0);

struct SliceResult {
  DiscreteCurve inside;
  DiscreteCurve outside;
  bool missed = false;  // sphere does not meet the curve (inside empty)
  double radius_used = 0.0;
};

SliceResult slice_by_sphere(const DiscreteCurve& curve, double radius, std::uint64_t seed = 0);

// Submesh over a face subset (mask true = keep), vertices compacted.
DiscreteCurve extract_submesh(const DiscreteCurve& curve, const std::vector<std::uint8_t>& face_mask,
                              std::string name = "", bool reject_degenerate = false);

// V - E + F over a face subset, counting vertices and edges incident to the
// selected faces. Exact integer bookkeeping.
int euler_of_faces(const DiscreteCurve& curve, const std::vector<std::uint8_t>& face_mask);

DiscreteCurve scale_curve(const DiscreteCurve& curve, double factor);

}  // namespace lamina

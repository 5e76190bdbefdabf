#pragma once

#include <vector>

#include "lamina/grid.hpp"
#include "lamina/mesh.hpp"

namespace lamina {

// Curve subdivided along the half-cell lattice of the (jittered) grid, so
// that every face projects into a single half-cell square. Regions (Q cells
// and crosses, for any of the four families) are unions of half-cells, so
// region decompositions are exact groupings of these faces.
//
// The lattice can be finer than the grid (lattice_k a multiple of grid.k);
// a refinement sweep cuts once at the finest level and reuses the mesh, so
// island patches at different k are comparable face sets.
struct CutCurve {
  DiscreteCurve mesh;
  ProjectionFrame frame;
  GridSpec grid;
  int lattice_k = 0;

  std::vector<complexd> vertex_proj;      // projected vertices (cut coords exact)
  std::vector<MeshEdge> edges;            // edge list of the cut mesh
  std::vector<int> face_subcell_a;        // half-cell indices at lattice level,
  std::vector<int> face_subcell_b;        // -1 when outside the square
  std::vector<double> face_signed_proj;   // signed projected area per face
  std::vector<complexd> face_centroid;    // projected centroid per face

  int subcells_per_side() const { return 4 * lattice_k; }
  double subcell_side() const { return 1.0 / (2.0 * lattice_k); }

  double face_area_r4(int f) const {
    const Face& t = mesh.faces[f];
    return triangle_area(mesh.vertices[t[0]], mesh.vertices[t[1]], mesh.vertices[t[2]]);
  }
};

CutCurve grid_cut(const DiscreteCurve& curve, const ProjectionFrame& frame, const GridSpec& grid,
                  int lattice_k = 0);

}  // namespace lamina

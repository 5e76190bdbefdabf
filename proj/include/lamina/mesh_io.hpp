#pragma once

#include <string>

#include "lamina/mesh.hpp"

namespace lamina {

// Mesh file format (JSON): {"vertices": [[re_z, im_z, re_w, im_w], ...],
// "faces": [[i, j, k], ...], "name": "..."}. Faces are counterclockwise
// triangles; quad entries in input files are split into two triangles.
// The writer output is deterministic, byte for byte.
DiscreteCurve curve_from_json(const std::string& text);
std::string curve_to_json(const DiscreteCurve& curve);

DiscreteCurve load_curve(const std::string& path);
void save_curve(const DiscreteCurve& curve, const std::string& path);

}  // namespace lamina

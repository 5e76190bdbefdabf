#pragma once

#include <utility>
#include <vector>

#include "lamina/mesh.hpp"

namespace lamina {

struct TrimParams {
  double rho = 0.7;
  std::vector<double> rho_prime_candidates{0.8, 0.85, 0.9};
  double budget = 6.0;  // acceptable (L + G + B) / A ratio
  std::uint64_t seed = 0;
};

struct TrimReport {
  double rho = 0.0;
  double rho_prime_selected = 0.0;
  std::vector<double> candidate_boundary_lengths;
  double area = 0.0;
  double boundary_length = 0.0;
  int genus = 0;
  int boundary_count = 0;
  double ratio = 0.0;  // (L + G + B) / A of the trimmed curve
  bool budget_exceeded = false;
  int glued_components = 0;    // shell components kept (touching the rho sphere)
  int dropped_components = 0;  // shell components discarded
};

// Keeps the part of the curve inside rho*B plus the connected components of
// the (rho, rho') shell that touch the rho sphere. rho' is the candidate
// minimizing the resulting boundary length (ties broken by the smallest
// value). The trimmed curve's boundary lies on the rho' sphere.
std::pair<DiscreteCurve, TrimReport> trim(const DiscreteCurve& curve, const TrimParams& params);

}  // namespace lamina

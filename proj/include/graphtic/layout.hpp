#pragma once

#include <cstdint>
#include <vector>

#include "graphtic/graph.hpp"
#include "graphtic/vec3.hpp"

namespace graphtic {

/// Node positions in meters plus the physical footprint used by the geometric
/// measures: nodes render as balls, edges as straight cylinders.
struct Layout3D {
  std::vector<Vec3> positions;
  double node_radius = 0.01;
  double edge_radius = 0.002;
  Box3 bounds;  // region geometry is clipped to (view cube after normalization)
};

struct LayoutStats {
  std::uint64_t seed = 0;
  double stress = 0.0;
  int iterations = 0;
  double ideal_edge_length = 0.0;
  std::vector<double> stress_history;  // stress after each sweep of the kept run
};

struct StressParams {
  int max_iter = 300;       // sweeps per restart
  double tol = 1e-6;        // stop when relative stress decrease falls below
  int restarts = 4;         // random restarts; lowest final stress wins
  double ideal_edge_length = 0.0;  // 0 picks cube_side / graph diameter
  double cube_side = 1.0;   // side of the initial placement cube
};

struct StressResult {
  Layout3D layout;
  LayoutStats stats;
};

/// Weighted stress sum_{i<j} w_ij (|x_i - x_j| - d_ij)^2 with d_ij = hop
/// distance times ideal_edge_length and w_ij = d_ij^-2.
double layout_stress(const Graph& g, const std::vector<Vec3>& positions,
                     double ideal_edge_length);

/// 3-D stress minimization by localized majorization: sequential per-node
/// updates, each of which cannot increase the stress, so every restart's
/// stress_history is non-increasing. Deterministic in (graph, seed, params).
/// Throws std::invalid_argument on disconnected input.
StressResult stress_layout(const Graph& g, std::uint64_t seed,
                           const StressParams& params = {});

/// Uniformly rescales so the largest bounding-box extent equals cube_side,
/// moves the barycenter to (0, height, 0), and sets bounds to the cube of
/// side cube_side centered on the bounding box (y is up).
void normalize_to_view(Layout3D& layout, double cube_side = 1.0, double height = 1.45);

}  // namespace graphtic

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphtic/geometry.hpp"
#include "graphtic/graph.hpp"
#include "graphtic/layout.hpp"

namespace graphtic {

enum class TaskKind { CommonNeighbors, ShortestPath };

/// Measure assigned to a node that lands in a noise region.
enum class MuNodeMode {
  Diameter,  // ball diameter, 2 * node_radius
  Zero,      // nodes carry no measure
};

/// Measure assigned to an edge that crosses a noise region.
enum class EdgeNoiseMode {
  Full,     // whole cylinder length
  Clipped,  // only the part inside the region
};

/// Scaling of the shortest-path distortion signal.
enum class Task2Mode {
  Absolute,  // meters
  Relative,  // divided by the endpoint distance
};

const char* mu_node_mode_name(MuNodeMode mode);    // "diameter" | "zero"
const char* edge_noise_mode_name(EdgeNoiseMode mode);  // "full" | "clipped"
const char* task2_mode_name(Task2Mode mode);       // "absolute" | "relative"
MuNodeMode parse_mu_node_mode(const std::string& name);
EdgeNoiseMode parse_edge_noise_mode(const std::string& name);
Task2Mode parse_task2_mode(const std::string& name);

struct ComplexityParams {
  MuNodeMode mu_node = MuNodeMode::Diameter;
  EdgeNoiseMode edge_noise = EdgeNoiseMode::Full;
  Task2Mode task2_mode = Task2Mode::Absolute;
  int path_cap = 64;  // refuse pairs with more shortest paths than this
  double node_probe_margin = 0.0;  // inflate regions by this for node tests
  MveeParams mvee;  // min_thickness <= 0 falls back to the layout edge radius
};

/// One graph element inside a noise region. Nodes have a == b.
struct NoiseElement {
  NodeId a = 0;
  NodeId b = 0;
  double mu = 0.0;
  bool is_edge() const { return a != b; }
};

struct NoiseResult {
  double total = 0.0;
  std::vector<NoiseElement> elements;
  Quadric region;
  std::vector<NodeId> path;  // minimizing path (shortest-path task only)
};

struct PathScore {
  double value = 0.0;
  std::vector<NodeId> path;  // maximizing path, oriented low-degree end first
};

/// Sum over common neighbors w of the squared triangle-inequality slack
/// (|wu| + |wv| - |uv|)^2: how far the common neighbors sit from the straight
/// line between the queried pair. Zero when there are no common neighbors.
double task1_signal(const Graph& g, const Layout3D& layout, NodeId u, NodeId v);

/// Distractor measure for the common-neighbors task: total mu of elements
/// outside the pair's common-neighbor structure that intersect the ball
/// centered on the pair midpoint and reaching the furthest neighbor of the
/// lower-degree endpoint. Throws when that endpoint has no neighbors.
NoiseResult task1_noise(const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
                        const ComplexityParams& params = {});

/// Path distortion signal: over all shortest u-v paths, the maximum of
/// 1/2 sum_w (1 - cos(180deg - theta_w)) |wv|, where theta_w is the polyline
/// angle at w and endpoints count as full turns. Relative mode divides by
/// |uv|. Throws when the pair is disconnected or the path count exceeds
/// params.path_cap.
PathScore task2_signal(const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
                       const ComplexityParams& params = {});

/// Distractor measure for the shortest-path task: over all shortest paths,
/// the minimum total mu of off-path elements inside the minimum-volume
/// ellipsoid enclosing the path's node positions.
NoiseResult task2_noise(const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
                        const ComplexityParams& params = {});

struct ComplexityScore {
  double signal = 0.0;
  double noise = 0.0;
  std::optional<double> combined;  // signal + ln(noise); empty when noise = 0
};

ComplexityScore score_instance(const Graph& g, const Layout3D& layout, TaskKind task,
                               NodeId u, NodeId v, const ComplexityParams& params = {});

struct FillRatioResult {
  double ratio = 0.0;
  double clipped_volume = 0.0;
  bool exact = false;  // every edge volume was analytic
};

/// Cube-root of (rendered geometry volume inside layout.bounds) / view_volume.
/// Node balls clip exactly; edge cylinders fall back to seeded Monte Carlo
/// when they cross the bounds. Elements are measured independently, so
/// overlaps count with multiplicity.
FillRatioResult fill_ratio(const Graph& g, const Layout3D& layout, double view_volume,
                           std::uint64_t seed = 0);

}  // namespace graphtic

#include "graphtic/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <string>

#include "graphtic/rng.hpp"

namespace graphtic {

const char* mu_node_mode_name(MuNodeMode mode) {
  return mode == MuNodeMode::Diameter ? "diameter" : "zero";
}

const char* edge_noise_mode_name(EdgeNoiseMode mode) {
  return mode == EdgeNoiseMode::Full ? "full" : "clipped";
}

const char* task2_mode_name(Task2Mode mode) {
  return mode == Task2Mode::Absolute ? "absolute" : "relative";
}

MuNodeMode parse_mu_node_mode(const std::string& name) {
  if (name == "diameter") return MuNodeMode::Diameter;
  if (name == "zero") return MuNodeMode::Zero;
  throw std::invalid_argument("unknown node measure mode: " + name);
}

EdgeNoiseMode parse_edge_noise_mode(const std::string& name) {
  if (name == "full") return EdgeNoiseMode::Full;
  if (name == "clipped") return EdgeNoiseMode::Clipped;
  throw std::invalid_argument("unknown edge noise mode: " + name);
}

Task2Mode parse_task2_mode(const std::string& name) {
  if (name == "absolute") return Task2Mode::Absolute;
  if (name == "relative") return Task2Mode::Relative;
  throw std::invalid_argument("unknown distortion mode: " + name);
}

namespace {

const std::vector<Vec3>& checked_positions(const Graph& g, const Layout3D& layout) {
  if (static_cast<int>(layout.positions.size()) != g.node_count())
    throw std::invalid_argument("layout position count does not match graph");
  return layout.positions;
}

// Canonical orientation for the asymmetric measures: lower degree first,
// ties toward the smaller id.
std::pair<NodeId, NodeId> orient_pair(const Graph& g, NodeId u, NodeId v) {
  g.check_node(u);
  g.check_node(v);
  if (u == v) throw std::invalid_argument("pair endpoints must differ");
  if (g.degree(u) > g.degree(v) || (g.degree(u) == g.degree(v) && u > v))
    std::swap(u, v);
  return {u, v};
}

std::pair<NodeId, NodeId> canonical_edge(NodeId a, NodeId b) {
  return a < b ? std::pair{a, b} : std::pair{b, a};
}

// Accumulates mu over all graph elements that intersect `region`, skipping the
// given nodes and edges.
void collect_noise(const Graph& g, const Layout3D& layout, const Quadric& region,
                   const std::set<NodeId>& skip_nodes,
                   const std::set<std::pair<NodeId, NodeId>>& skip_edges,
                   const ComplexityParams& params, NoiseResult& out) {
  const auto& pos = layout.positions;
  const Quadric node_probe =
      params.node_probe_margin > 0.0 ? region.inflated(params.node_probe_margin) : region;
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (skip_nodes.count(x)) continue;
    if (!node_probe.contains(pos[x])) continue;
    double mu = params.mu_node == MuNodeMode::Diameter ? 2.0 * layout.node_radius : 0.0;
    out.elements.push_back({x, x, mu});
    out.total += mu;
  }
  for (auto [a, b] : g.edges()) {
    if (skip_edges.count({a, b})) continue;
    if (!segment_intersects(region, pos[a], pos[b])) continue;
    double mu = params.edge_noise == EdgeNoiseMode::Full
                    ? distance(pos[a], pos[b])
                    : clipped_length(region, pos[a], pos[b]);
    out.elements.push_back({a, b, mu});
    out.total += mu;
  }
}

std::vector<std::vector<NodeId>> shortest_paths_or_throw(const Graph& g, NodeId u,
                                                         NodeId v, int cap) {
  PathEnumeration en = enumerate_shortest_paths(g, u, v, cap);
  if (en.exceeded)
    throw std::runtime_error("pair (" + std::to_string(u) + ", " + std::to_string(v) +
                             ") has more than " + std::to_string(cap) +
                             " shortest paths");
  return std::move(en.paths);
}

double path_distortion(const Layout3D& layout, const std::vector<NodeId>& path,
                       Task2Mode mode) {
  const auto& pos = layout.positions;
  const Vec3& goal = pos[path.back()];
  double total = 0.0;
  for (size_t i = 0; i < path.size(); ++i) {
    // Endpoints have no incoming or outgoing leg; they count as full turns.
    double theta = 0.0;
    if (i > 0 && i + 1 < path.size())
      theta = node_angle(pos[path[i - 1]], pos[path[i]], pos[path[i + 1]]);
    double turn = 1.0 - std::cos((180.0 - theta) * std::numbers::pi / 180.0);
    total += 0.5 * turn * distance(pos[path[i]], goal);
  }
  if (mode == Task2Mode::Relative) {
    double d = distance(pos[path.front()], goal);
    if (d <= 0.0)
      throw std::runtime_error("relative distortion undefined for coincident endpoints");
    total /= d;
  }
  return total;
}

}  // namespace

double task1_signal(const Graph& g, const Layout3D& layout, NodeId u, NodeId v) {
  const auto& pos = checked_positions(g, layout);
  auto [a, b] = orient_pair(g, u, v);
  double base = distance(pos[a], pos[b]);
  double total = 0.0;
  for (NodeId w : common_neighbors(g, a, b)) {
    double slack = distance(pos[w], pos[a]) + distance(pos[w], pos[b]) - base;
    total += slack * slack;
  }
  return total;
}

NoiseResult task1_noise(const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
                        const ComplexityParams& params) {
  const auto& pos = checked_positions(g, layout);
  auto [a, b] = orient_pair(g, u, v);
  if (g.degree(a) == 0)
    throw std::invalid_argument("node " + std::to_string(a) + " has no neighbors");

  Vec3 center = 0.5 * (pos[a] + pos[b]);
  double radius = 0.0;
  for (NodeId w : g.neighbors(a)) radius = std::max(radius, distance(center, pos[w]));

  NoiseResult out;
  out.region = Quadric::sphere(center, radius);

  std::set<NodeId> skip_nodes{a, b};
  std::set<std::pair<NodeId, NodeId>> skip_edges;
  if (g.has_edge(a, b)) skip_edges.insert(canonical_edge(a, b));
  for (NodeId w : common_neighbors(g, a, b)) {
    skip_nodes.insert(w);
    skip_edges.insert(canonical_edge(w, a));
    skip_edges.insert(canonical_edge(w, b));
  }
  collect_noise(g, layout, out.region, skip_nodes, skip_edges, params, out);
  return out;
}

PathScore task2_signal(const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
                       const ComplexityParams& params) {
  checked_positions(g, layout);
  auto [a, b] = orient_pair(g, u, v);
  auto paths = shortest_paths_or_throw(g, a, b, params.path_cap);
  PathScore best;
  bool first = true;
  for (auto& path : paths) {
    double value = path_distortion(layout, path, params.task2_mode);
    if (first || value > best.value) {
      best.value = value;
      best.path = std::move(path);
      first = false;
    }
  }
  return best;
}

NoiseResult task2_noise(const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
                        const ComplexityParams& params) {
  const auto& pos = checked_positions(g, layout);
  auto [a, b] = orient_pair(g, u, v);
  auto paths = shortest_paths_or_throw(g, a, b, params.path_cap);

  ComplexityParams local = params;
  if (local.mvee.min_thickness <= 0.0) local.mvee.min_thickness = layout.edge_radius;

  NoiseResult best;
  bool first = true;
  for (auto& path : paths) {
    std::vector<Vec3> points;
    points.reserve(path.size());
    for (NodeId w : path) points.push_back(pos[w]);

    NoiseResult cur;
    cur.region = mvee(points, local.mvee);
    std::set<NodeId> skip_nodes(path.begin(), path.end());
    std::set<std::pair<NodeId, NodeId>> skip_edges;
    for (size_t i = 0; i + 1 < path.size(); ++i)
      skip_edges.insert(canonical_edge(path[i], path[i + 1]));
    collect_noise(g, layout, cur.region, skip_nodes, skip_edges, local, cur);

    if (first || cur.total < best.total) {
      best = std::move(cur);
      best.path = std::move(path);
      first = false;
    }
  }
  return best;
}

ComplexityScore score_instance(const Graph& g, const Layout3D& layout, TaskKind task,
                               NodeId u, NodeId v, const ComplexityParams& params) {
  ComplexityScore out;
  if (task == TaskKind::CommonNeighbors) {
    out.signal = task1_signal(g, layout, u, v);
    out.noise = task1_noise(g, layout, u, v, params).total;
  } else {
    out.signal = task2_signal(g, layout, u, v, params).value;
    out.noise = task2_noise(g, layout, u, v, params).total;
  }
  if (out.noise > 0.0) out.combined = out.signal + std::log(out.noise);
  return out;
}

FillRatioResult fill_ratio(const Graph& g, const Layout3D& layout, double view_volume,
                           std::uint64_t seed) {
  const auto& pos = checked_positions(g, layout);
  if (view_volume <= 0.0) throw std::invalid_argument("view_volume must be positive");

  FillRatioResult out;
  out.exact = true;
  for (NodeId v = 0; v < g.node_count(); ++v)
    out.clipped_volume += sphere_box_volume(pos[v], layout.node_radius, layout.bounds);
  int index = 0;
  for (auto [a, b] : g.edges()) {
    CylinderClipResult clip =
        cylinder_box_volume(pos[a], pos[b], layout.edge_radius, layout.bounds,
                            derive_seed(seed, index++));
    out.clipped_volume += clip.volume;
    out.exact = out.exact && clip.exact;
  }
  out.ratio = std::cbrt(out.clipped_volume / view_volume);
  return out;
}

}  // namespace graphtic

#pragma once

#include <string>

#include "graphtic/graph.hpp"
#include "graphtic/io.hpp"
#include "graphtic/layout.hpp"

namespace graphtic {

/// Okabe-Ito palette entries; defaults here mirror the bundled config and can
/// be overridden by it.
struct SceneStyle {
  std::string graph_color = "#56B4E9";      // sky blue
  std::string selection_color = "#D55E00";  // vermilion
};

struct SceneView {
  double cube_side = 1.0;           // meters
  double barycenter_height = 1.45;  // meters above the floor, Y-up
};

/// A renderable stimulus: one laid-out graph with exactly two selected nodes
/// inside a viewing cube.
struct Scene {
  Graph graph;
  Layout3D layout;
  NodeId selected_u = 0;
  NodeId selected_v = 0;
  SceneStyle style;
  SceneView view;
};

/// Exactly two distinct selected nodes, positions matching the graph, and the
/// position bounding box inside the viewing cube (1e-9 slack). Throws
/// std::invalid_argument on violation.
void validate_scene(const Scene& scene);

Scene make_scene(Graph graph, Layout3D layout, NodeId selected_u, NodeId selected_v,
                 const SceneStyle& style = {}, const SceneView& view = {});

/// JSON schema "graphtic-scene" v1: units meters, Y-up. Positions round-trip
/// exactly (shortest decimal doubles).
Json scene_to_json(const Scene& scene);
Scene scene_from_json(const Json& doc);

}  // namespace graphtic

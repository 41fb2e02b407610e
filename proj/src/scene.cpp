#include "graphtic/scene.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace graphtic {

void validate_scene(const Scene& scene) {
  const Graph& g = scene.graph;
  if (static_cast<int>(scene.layout.positions.size()) != g.node_count())
    throw std::invalid_argument("scene position count does not match graph");
  g.check_node(scene.selected_u);
  g.check_node(scene.selected_v);
  if (scene.selected_u == scene.selected_v)
    throw std::invalid_argument("a scene selects exactly two distinct nodes");
  if (scene.view.cube_side <= 0.0)
    throw std::invalid_argument("viewing cube must have positive side");

  constexpr double kSlack = 1e-9;
  const Box3& b = scene.layout.bounds;
  Vec3 ext = b.extent();
  if (ext.x > scene.view.cube_side + kSlack || ext.y > scene.view.cube_side + kSlack ||
      ext.z > scene.view.cube_side + kSlack)
    throw std::invalid_argument("scene bounds exceed the viewing cube");
  for (const Vec3& p : scene.layout.positions)
    if (p.x < b.lo.x - kSlack || p.x > b.hi.x + kSlack || p.y < b.lo.y - kSlack ||
        p.y > b.hi.y + kSlack || p.z < b.lo.z - kSlack || p.z > b.hi.z + kSlack)
      throw std::invalid_argument("scene has positions outside its bounds");
}

Scene make_scene(Graph graph, Layout3D layout, NodeId selected_u, NodeId selected_v,
                 const SceneStyle& style, const SceneView& view) {
  Scene scene{std::move(graph), std::move(layout), selected_u, selected_v, style, view};
  validate_scene(scene);
  return scene;
}

Json scene_to_json(const Scene& scene) {
  validate_scene(scene);
  Json doc;
  doc["format"] = "graphtic-scene";
  doc["version"] = 1;
  doc["units"] = "meters";
  doc["up"] = "y";
  doc["view"] = {{"cube_side", scene.view.cube_side},
                 {"barycenter_height", scene.view.barycenter_height},
                 {"bounds",
                  {{"lo", Json::array({scene.layout.bounds.lo.x, scene.layout.bounds.lo.y,
                                       scene.layout.bounds.lo.z})},
                   {"hi", Json::array({scene.layout.bounds.hi.x, scene.layout.bounds.hi.y,
                                       scene.layout.bounds.hi.z})}}}};
  doc["style"] = {{"graph_color", scene.style.graph_color},
                  {"selection_color", scene.style.selection_color},
                  {"node_radius", scene.layout.node_radius},
                  {"edge_radius", scene.layout.edge_radius}};
  doc["selected"] = Json::array({scene.selected_u, scene.selected_v});

  Json nodes = Json::array();
  for (NodeId v = 0; v < scene.graph.node_count(); ++v) {
    const Vec3& p = scene.layout.positions[v];
    nodes.push_back({{"id", v},
                     {"label", scene.graph.label(v)},
                     {"position", Json::array({p.x, p.y, p.z})}});
  }
  doc["nodes"] = std::move(nodes);

  Json edges = Json::array();
  for (const auto& [a, b] : scene.graph.edges()) edges.push_back(Json::array({a, b}));
  doc["edges"] = std::move(edges);
  return doc;
}

Scene scene_from_json(const Json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "graphtic-scene")
    throw std::invalid_argument("not a graphtic-scene document");
  if (doc.value("version", 0) != 1)
    throw std::invalid_argument("unsupported scene version");

  Scene scene;
  const Json& view = doc.at("view");
  scene.view.cube_side = view.at("cube_side").get<double>();
  scene.view.barycenter_height = view.at("barycenter_height").get<double>();
  const Json& lo = view.at("bounds").at("lo");
  const Json& hi = view.at("bounds").at("hi");
  scene.layout.bounds = {{lo[0].get<double>(), lo[1].get<double>(), lo[2].get<double>()},
                         {hi[0].get<double>(), hi[1].get<double>(), hi[2].get<double>()}};

  const Json& style = doc.at("style");
  scene.style.graph_color = style.at("graph_color").get<std::string>();
  scene.style.selection_color = style.at("selection_color").get<std::string>();
  scene.layout.node_radius = style.at("node_radius").get<double>();
  scene.layout.edge_radius = style.at("edge_radius").get<double>();

  const Json& selected = doc.at("selected");
  if (!selected.is_array() || selected.size() != 2)
    throw std::invalid_argument("a scene selects exactly two distinct nodes");
  scene.selected_u = selected[0].get<NodeId>();
  scene.selected_v = selected[1].get<NodeId>();

  std::vector<std::string> labels;
  for (const Json& node : doc.at("nodes")) {
    if (node.at("id").get<int>() != static_cast<int>(labels.size()))
      throw std::invalid_argument("scene node ids must be dense and ordered");
    labels.push_back(node.at("label").get<std::string>());
    const Json& p = node.at("position");
    scene.layout.positions.push_back(
        {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const Json& e : doc.at("edges"))
    edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
  scene.graph = Graph::build(static_cast<int>(labels.size()), std::move(edges),
                             std::move(labels));

  validate_scene(scene);
  return scene;
}

}  // namespace graphtic

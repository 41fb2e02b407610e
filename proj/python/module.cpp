#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "graphtic/complexity.hpp"
#include "graphtic/evaluate.hpp"
#include "graphtic/geometry.hpp"
#include "graphtic/graph.hpp"
#include "graphtic/layout.hpp"
#include "graphtic/synth.hpp"

namespace py = pybind11;
using namespace graphtic;

namespace {

using PyVec = std::tuple<double, double, double>;

Vec3 to_vec3(const PyVec& t) { return {std::get<0>(t), std::get<1>(t), std::get<2>(t)}; }

PyVec from_vec3(const Vec3& v) { return {v.x, v.y, v.z}; }

std::vector<PyVec> from_positions(const std::vector<Vec3>& pos) {
  std::vector<PyVec> out;
  out.reserve(pos.size());
  for (const Vec3& p : pos) out.push_back(from_vec3(p));
  return out;
}

ComplexityParams make_params(const std::string& mu_node, const std::string& edge_noise,
                             const std::string& mode, int path_cap) {
  ComplexityParams params;
  params.mu_node = parse_mu_node_mode(mu_node);
  params.edge_noise = parse_edge_noise_mode(edge_noise);
  params.task2_mode = parse_task2_mode(mode);
  params.path_cap = path_cap;
  return params;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "task-instance complexity measures for 3-D graph layouts";

  py::class_<Graph>(m, "Graph")
      .def(py::init([](int node_count, std::vector<std::pair<int, int>> edges,
                       std::vector<std::string> labels) {
             return Graph::build(node_count, std::move(edges), std::move(labels));
           }),
           py::arg("node_count"), py::arg("edges"),
           py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("edges", [](const Graph& g) { return g.edges(); })
      .def("neighbors", [](const Graph& g, NodeId v) { return g.neighbors(v); })
      .def("degree", &Graph::degree)
      .def("has_edge", &Graph::has_edge)
      .def("label", [](const Graph& g, NodeId v) { return g.label(v); });

  m.def("common_neighbors", &common_neighbors, py::arg("graph"), py::arg("u"),
        py::arg("v"));
  m.def("shortest_path_length", &shortest_path_length, py::arg("graph"), py::arg("u"),
        py::arg("v"));

  py::class_<Layout3D>(m, "Layout3D")
      .def_property(
          "positions", [](const Layout3D& l) { return from_positions(l.positions); },
          [](Layout3D& l, const std::vector<PyVec>& pos) {
            l.positions.clear();
            for (const PyVec& p : pos) l.positions.push_back(to_vec3(p));
          })
      .def_readwrite("node_radius", &Layout3D::node_radius)
      .def_readwrite("edge_radius", &Layout3D::edge_radius)
      .def_property_readonly("bounds", [](const Layout3D& l) {
        return std::make_pair(from_vec3(l.bounds.lo), from_vec3(l.bounds.hi));
      });

  m.def(
      "stress_layout",
      [](const Graph& g, std::uint64_t seed, int restarts, int max_iter) {
        StressParams params;
        params.restarts = restarts;
        params.max_iter = max_iter;
        StressResult res = stress_layout(g, seed, params);
        py::dict stats;
        stats["seed"] = res.stats.seed;
        stats["stress"] = res.stats.stress;
        stats["iterations"] = res.stats.iterations;
        stats["ideal_edge_length"] = res.stats.ideal_edge_length;
        return py::make_tuple(res.layout, stats);
      },
      py::arg("graph"), py::arg("seed") = 0, py::arg("restarts") = 4,
      py::arg("max_iter") = 300);

  m.def(
      "normalize_to_view",
      [](Layout3D layout, double cube_side, double height) {
        normalize_to_view(layout, cube_side, height);
        return layout;
      },
      py::arg("layout"), py::arg("cube_side") = 1.0, py::arg("height") = 1.45);

  m.def(
      "mvee",
      [](const std::vector<PyVec>& points, double eps, double min_thickness) {
        std::vector<Vec3> pts;
        for (const PyVec& p : points) pts.push_back(to_vec3(p));
        MveeParams params;
        params.eps = eps;
        params.min_thickness = min_thickness;
        Quadric q = mvee(pts, params);
        py::dict out;
        out["center"] = from_vec3(q.center);
        out["semi_axes"] = q.semi_axes();
        out["volume"] = q.volume();
        return out;
      },
      py::arg("points"), py::arg("eps") = 1e-3, py::arg("min_thickness") = 0.0);

  py::class_<ComplexityScore>(m, "ComplexityScore")
      .def_readonly("signal", &ComplexityScore::signal)
      .def_readonly("noise", &ComplexityScore::noise)
      .def_property_readonly("combined",
                             [](const ComplexityScore& s) -> py::object {
                               if (s.combined) return py::float_(*s.combined);
                               return py::none();
                             });

  m.def(
      "task1_signal",
      [](const Graph& g, const Layout3D& layout, NodeId u, NodeId v) {
        return task1_signal(g, layout, u, v);
      },
      py::arg("graph"), py::arg("layout"), py::arg("u"), py::arg("v"));
  m.def(
      "task1_noise",
      [](const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
         const std::string& mu_node, const std::string& edge_noise) {
        return task1_noise(g, layout, u, v, make_params(mu_node, edge_noise, "absolute", 64))
            .total;
      },
      py::arg("graph"), py::arg("layout"), py::arg("u"), py::arg("v"),
      py::arg("mu_node") = "diameter", py::arg("edge_noise") = "full");
  m.def(
      "task2_signal",
      [](const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
         const std::string& mode, int path_cap) {
        return task2_signal(g, layout, u, v, make_params("diameter", "full", mode, path_cap))
            .value;
      },
      py::arg("graph"), py::arg("layout"), py::arg("u"), py::arg("v"),
      py::arg("mode") = "absolute", py::arg("path_cap") = 64);
  m.def(
      "task2_noise",
      [](const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
         const std::string& mu_node, const std::string& edge_noise, int path_cap) {
        return task2_noise(g, layout, u, v,
                           make_params(mu_node, edge_noise, "absolute", path_cap))
            .total;
      },
      py::arg("graph"), py::arg("layout"), py::arg("u"), py::arg("v"),
      py::arg("mu_node") = "diameter", py::arg("edge_noise") = "full",
      py::arg("path_cap") = 64);

  m.def(
      "score_instance",
      [](const Graph& g, const Layout3D& layout, const std::string& task, NodeId u,
         NodeId v, const std::string& mu_node, const std::string& edge_noise,
         const std::string& mode, int path_cap) {
        return score_instance(g, layout, parse_task(task), u, v,
                              make_params(mu_node, edge_noise, mode, path_cap));
      },
      py::arg("graph"), py::arg("layout"), py::arg("task"), py::arg("u"), py::arg("v"),
      py::arg("mu_node") = "diameter", py::arg("edge_noise") = "full",
      py::arg("mode") = "absolute", py::arg("path_cap") = 64);

  m.def(
      "fill_ratio",
      [](const Graph& g, const Layout3D& layout, double view_volume, std::uint64_t seed) {
        return fill_ratio(g, layout, view_volume, seed).ratio;
      },
      py::arg("graph"), py::arg("layout"), py::arg("view_volume"), py::arg("seed") = 0);

  m.def("accuracy", &accuracy, py::arg("correct"), py::arg("actual"));

  m.def(
      "synth_graph",
      [](std::uint64_t seed, double mean_nodes, double sd_nodes, double mean_density,
         double sd_density) {
        SynthParams params;
        params.mean_nodes = mean_nodes;
        params.sd_nodes = sd_nodes;
        params.mean_density = mean_density;
        params.sd_density = sd_density;
        return synth_graph(seed, params);
      },
      py::arg("seed"), py::arg("mean_nodes") = 149.0, py::arg("sd_nodes") = 40.0,
      py::arg("mean_density") = 0.05, py::arg("sd_density") = 0.01);
}

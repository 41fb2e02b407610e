#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "graphtic/complexity.hpp"
#include "graphtic/layout.hpp"
#include "graphtic/synth.hpp"
#include "oracles.hpp"

using graphtic::ComplexityParams;
using graphtic::EdgeNoiseMode;
using graphtic::Graph;
using graphtic::Layout3D;
using graphtic::MuNodeMode;
using graphtic::NodeId;
using graphtic::NoiseResult;
using graphtic::Quadric;
using graphtic::Task2Mode;
using graphtic::TaskKind;
using graphtic::Vec3;

namespace {

Layout3D layout_of(std::vector<Vec3> positions) {
  Layout3D l;
  l.positions = std::move(positions);
  l.bounds = {{-100, -100, -100}, {100, 100, 100}};
  return l;
}

using ElementSet = std::set<std::pair<NodeId, NodeId>>;

ElementSet element_set(const NoiseResult& r) {
  ElementSet out;
  for (const auto& e : r.elements) out.insert({e.a, e.b});
  return out;
}

// Independent census of the common-neighbors noise: rebuild the exclusion
// sets and the probe sphere from scratch, then test membership by raw
// quadric evaluation and dense segment sampling.
ElementSet census_task1(const Graph& g, const Layout3D& layout, NodeId u, NodeId v,
                        const Quadric& region) {
  auto adj = oracle::adjacency_lists(g);
  if (adj[u].size() > adj[v].size() ||
      (adj[u].size() == adj[v].size() && u > v))
    std::swap(u, v);
  std::set<NodeId> skip_nodes{u, v};
  ElementSet skip_edges;
  if (g.has_edge(u, v)) skip_edges.insert(std::minmax(u, v));
  for (NodeId w = 0; w < g.node_count(); ++w) {
    if (w == u || w == v || !g.has_edge(w, u) || !g.has_edge(w, v)) continue;
    skip_nodes.insert(w);
    skip_edges.insert(std::minmax(w, u));
    skip_edges.insert(std::minmax(w, v));
  }
  ElementSet out;
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (skip_nodes.count(x)) continue;
    if (oracle::quadric_value(region, layout.positions[x]) <= 1.0) out.insert({x, x});
  }
  for (auto [a, b] : g.edges()) {
    if (skip_edges.count({a, b})) continue;
    if (oracle::segment_in_region_sampled(region, layout.positions[a],
                                          layout.positions[b]))
      out.insert({a, b});
  }
  return out;
}

// Independent census of the shortest-path noise for one candidate path and
// its already-built region.
ElementSet census_task2(const Graph& g, const Layout3D& layout,
                        const std::vector<NodeId>& path, const Quadric& region) {
  std::set<NodeId> skip_nodes(path.begin(), path.end());
  ElementSet skip_edges;
  for (size_t i = 0; i + 1 < path.size(); ++i)
    skip_edges.insert(std::minmax(path[i], path[i + 1]));
  ElementSet out;
  for (NodeId x = 0; x < g.node_count(); ++x) {
    if (skip_nodes.count(x)) continue;
    if (oracle::quadric_value(region, layout.positions[x]) <= 1.0) out.insert({x, x});
  }
  for (auto [a, b] : g.edges()) {
    if (skip_edges.count({a, b})) continue;
    if (oracle::segment_in_region_sampled(region, layout.positions[a],
                                          layout.positions[b]))
      out.insert({a, b});
  }
  return out;
}

}  // namespace

TEST_CASE("mode helpers round-trip and reject unknown names") {
  CHECK(graphtic::parse_mu_node_mode("diameter") == MuNodeMode::Diameter);
  CHECK(graphtic::parse_mu_node_mode("zero") == MuNodeMode::Zero);
  CHECK(std::string(graphtic::mu_node_mode_name(MuNodeMode::Diameter)) == "diameter");
  CHECK_THROWS_AS(graphtic::parse_mu_node_mode("ball"), std::invalid_argument);

  CHECK(graphtic::parse_edge_noise_mode("full") == EdgeNoiseMode::Full);
  CHECK(graphtic::parse_edge_noise_mode("clipped") == EdgeNoiseMode::Clipped);
  CHECK(std::string(graphtic::edge_noise_mode_name(EdgeNoiseMode::Clipped)) ==
        "clipped");
  CHECK_THROWS_AS(graphtic::parse_edge_noise_mode("partial"), std::invalid_argument);

  CHECK(graphtic::parse_task2_mode("absolute") == Task2Mode::Absolute);
  CHECK(graphtic::parse_task2_mode("relative") == Task2Mode::Relative);
  CHECK(std::string(graphtic::task2_mode_name(Task2Mode::Relative)) == "relative");
  CHECK_THROWS_AS(graphtic::parse_task2_mode("scaled"), std::invalid_argument);
}

TEST_CASE("slack signal forced values") {
  // No common neighbors: a bare edge.
  Graph edge = Graph::build(2, {{0, 1}});
  auto l2 = layout_of({{0, 0, 0}, {1, 0, 0}});
  CHECK(graphtic::task1_signal(edge, l2, 0, 1) == 0.0);

  // A common neighbor exactly on the segment contributes zero.
  Graph tri = Graph::build(3, {{0, 1}, {0, 2}, {1, 2}});
  auto on_seg = layout_of({{0, 0, 0}, {1, 0, 0}, {0.5, 0, 0}});
  CHECK(graphtic::task1_signal(tri, on_seg, 0, 1) == 0.0);

  // The worked midpoint bump.
  auto bumped = layout_of({{0, 0, 0}, {1, 0, 0}, {0.5, 0.5, 0}});
  double s = std::sqrt(0.5) + std::sqrt(0.5) - 1.0;
  CHECK(graphtic::task1_signal(tri, bumped, 0, 1) ==
        doctest::Approx(s * s).epsilon(1e-12));
  CHECK(graphtic::task1_signal(tri, bumped, 0, 1) ==
        doctest::Approx(0.17157).epsilon(1e-4));
}

TEST_CASE("slack signal matches the direct summation oracle") {
  std::mt19937 rng(500);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 4 + static_cast<int>(rng() % 27);
    Graph g = oracle::random_connected_graph(rng, n, 1.2);
    auto layout = layout_of(oracle::random_positions(rng, n, 2.0));
    NodeId u = rng() % n;
    NodeId v = rng() % n;
    if (u == v) continue;
    double lib = graphtic::task1_signal(g, layout, u, v);
    double ref = oracle::slack_sum(g, layout.positions, u, v);
    CHECK(lib == doctest::Approx(ref).epsilon(1e-9));

    // Scale behavior: positions scaled by s scale the signal by s^2.
    for (double s : {0.5, 2.0}) {
      Layout3D scaled = layout;
      for (Vec3& p : scaled.positions) p = s * p;
      double expect = s * s * lib;
      double got = graphtic::task1_signal(g, scaled, u, v);
      if (expect == 0.0)
        CHECK(got == 0.0);
      else
        CHECK(got == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("common-neighbors noise forced values") {
  // Everything in the graph belongs to the pair structure: zero noise.
  Graph covered = Graph::build(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
  auto cl = layout_of({{0, 0, 0}, {1, 0, 0}, {0.5, 0.4, 0}, {0.5, -0.4, 0}});
  auto res = graphtic::task1_noise(covered, cl, 0, 1);
  CHECK(res.total == 0.0);
  CHECK(res.elements.empty());

  // One extraneous unit edge through the sphere center adds exactly 1.
  Graph g = Graph::build(5, {{0, 2}, {1, 2}, {3, 4}});
  auto l = layout_of(
      {{0, 0, 0}, {1, 0, 0}, {0.5, 0.4, 0}, {0.5, 0, -0.5}, {0.5, 0, 0.5}});
  auto noisy = graphtic::task1_noise(g, l, 0, 1);
  CHECK(noisy.total == 1.0);
  REQUIRE(noisy.elements.size() == 1);
  CHECK(noisy.elements[0].is_edge());

  // Clipped mode reduces that edge to the in-sphere chord.
  ComplexityParams clipped;
  clipped.edge_noise = EdgeNoiseMode::Clipped;
  auto chord = graphtic::task1_noise(g, l, 0, 1, clipped);
  CHECK(chord.total == doctest::Approx(0.8).epsilon(1e-9));

  // Zero node measure silences an in-sphere distractor node.
  Graph withnode = Graph::build(4, {{0, 2}, {1, 2}});
  auto ln = layout_of({{0, 0, 0}, {1, 0, 0}, {0.5, 0.4, 0}, {0.5, 0.1, 0}});
  auto diam = graphtic::task1_noise(withnode, ln, 0, 1);
  CHECK(diam.total == doctest::Approx(2.0 * ln.node_radius));
  ComplexityParams zero;
  zero.mu_node = MuNodeMode::Zero;
  auto muted = graphtic::task1_noise(withnode, ln, 0, 1, zero);
  CHECK(muted.total == 0.0);
  CHECK(muted.elements.size() == 1);  // membership is independent of the measure

  // An endpoint with no neighbors cannot define the probe sphere.
  Graph lonely = Graph::build(3, {{1, 2}});
  auto ll = layout_of({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}});
  CHECK_THROWS_AS(graphtic::task1_noise(lonely, ll, 0, 1), std::invalid_argument);
}

TEST_CASE("common-neighbors noise census matches dense sampling") {
  std::mt19937 rng(501);
  int checked = 0;
  while (checked < 30) {
    int n = 6 + static_cast<int>(rng() % 18);
    Graph g = oracle::random_connected_graph(rng, n, 1.0);
    auto layout = layout_of(oracle::random_positions(rng, n, 1.5));
    NodeId u = rng() % n;
    NodeId v = rng() % n;
    if (u == v) continue;
    auto res = graphtic::task1_noise(g, layout, u, v);
    CHECK(element_set(res) == census_task1(g, layout, u, v, res.region));
    double sum = 0.0;
    for (const auto& e : res.elements) sum += e.mu;
    CHECK(res.total == doctest::Approx(sum));
    ++checked;
  }
}

TEST_CASE("path distortion forced values") {
  // Straight paths cost exactly the endpoint distance, regardless of hops.
  for (int hops : {1, 2, 3, 6}) {
    std::vector<std::pair<NodeId, NodeId>> e;
    std::vector<Vec3> pos;
    for (int i = 0; i <= hops; ++i) {
      if (i > 0) e.push_back({i - 1, i});
      pos.push_back({1.0 * i, 2.0 * i, 2.0 * i});
    }
    Graph g = Graph::build(hops + 1, e);
    auto layout = layout_of(pos);
    auto score = graphtic::task2_signal(g, layout, 0, hops);
    double dist = graphtic::distance(pos.front(), pos.back());
    CHECK(score.value == dist);  // exact, not approximate
  }

  // One interior right angle adds half the distance from that node to the goal.
  Graph p3 = Graph::build(3, {{0, 1}, {1, 2}});
  auto bent = layout_of({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}});
  auto score = graphtic::task2_signal(p3, bent, 0, 2);
  CHECK(score.value == doctest::Approx(std::sqrt(2.0) + 0.5).epsilon(1e-12));

  // The 3-hop 90/180 hand case.
  Graph p4 = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}});
  auto hand = layout_of({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 2, 0}});
  auto hv = graphtic::task2_signal(p4, hand, 0, 3);
  CHECK(hv.value == doctest::Approx(std::sqrt(5.0) + 1.0).epsilon(1e-9));
  CHECK(hv.value ==
        doctest::Approx(oracle::polyline_distortion(hand.positions, false))
            .epsilon(1e-9));
}

TEST_CASE("path distortion matches the acos oracle and scales correctly") {
  std::mt19937 rng(502);
  for (int trial = 0; trial < 40; ++trial) {
    int hops = 2 + static_cast<int>(rng() % 6);
    std::vector<std::pair<NodeId, NodeId>> e;
    for (int i = 0; i < hops; ++i) e.push_back({i, i + 1});
    Graph g = Graph::build(hops + 1, e);
    auto layout = layout_of(oracle::random_positions(rng, hops + 1, 2.0));

    auto abs_score = graphtic::task2_signal(g, layout, 0, hops);
    CHECK(abs_score.value ==
          doctest::Approx(oracle::polyline_distortion(layout.positions, false))
              .epsilon(1e-9));

    ComplexityParams rel;
    rel.task2_mode = Task2Mode::Relative;
    auto rel_score = graphtic::task2_signal(g, layout, 0, hops, rel);
    CHECK(rel_score.value ==
          doctest::Approx(oracle::polyline_distortion(layout.positions, true))
              .epsilon(1e-9));

    // Relative mode is scale-invariant; absolute mode scales linearly.
    double s = 0.25 + 3.0 * std::uniform_real_distribution<double>(0, 1)(rng);
    Layout3D scaled = layout;
    for (Vec3& p : scaled.positions) p = s * p;
    auto rel_scaled = graphtic::task2_signal(g, scaled, 0, hops, rel);
    CHECK(rel_scaled.value == doctest::Approx(rel_score.value).epsilon(1e-9));
    auto abs_scaled = graphtic::task2_signal(g, scaled, 0, hops);
    CHECK(abs_scaled.value == doctest::Approx(s * abs_score.value).epsilon(1e-9));
  }
}

TEST_CASE("subdividing an edge leaves the distortion unchanged") {
  std::mt19937 rng(503);
  for (int trial = 0; trial < 25; ++trial) {
    auto pos = oracle::random_positions(rng, 4, 1.0);
    Graph p4 = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}});
    auto base = graphtic::task2_signal(p4, layout_of(pos), 0, 3);

    double t = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    Vec3 mid = pos[1] + t * (pos[2] - pos[1]);
    Graph p5 = Graph::build(5, {{0, 1}, {1, 4}, {4, 2}, {2, 3}});
    auto pos5 = pos;
    pos5.push_back(mid);
    auto split = graphtic::task2_signal(p5, layout_of(pos5), 0, 3);
    CHECK(std::abs(split.value - base.value) < 1e-9);
  }
}

TEST_CASE("distortion picks the worst shortest path") {
  // C4 has two shortest paths between opposite corners; the bent one wins.
  Graph c4 = Graph::build(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  auto layout = layout_of({{0, 0, 0}, {1, 0, 0}, {2, 0, 0}, {1, 1.5, 0}});
  auto score = graphtic::task2_signal(c4, layout, 0, 2);
  double via1 = oracle::polyline_distortion(
      {layout.positions[0], layout.positions[1], layout.positions[2]}, false);
  double via3 = oracle::polyline_distortion(
      {layout.positions[0], layout.positions[3], layout.positions[2]}, false);
  CHECK(score.value == doctest::Approx(std::max(via1, via3)).epsilon(1e-12));
  REQUIRE(score.path.size() == 3);
  CHECK(score.path[1] == (via3 > via1 ? 3 : 1));

  ComplexityParams capped;
  capped.path_cap = 1;
  CHECK_THROWS_AS(graphtic::task2_signal(c4, layout, 0, 2, capped),
                  std::runtime_error);

  Graph split = Graph::build(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(graphtic::task2_signal(split, layout, 0, 2), std::runtime_error);
}

TEST_CASE("shortest-path noise forced values") {
  // A bare embedded path has nothing to count.
  Graph p3 = Graph::build(3, {{0, 1}, {1, 2}});
  auto bare = layout_of({{0, 0, 0}, {0.5, 0.2, 0}, {1, 0, 0}});
  auto res = graphtic::task2_noise(p3, bare, 0, 2);
  CHECK(res.total == 0.0);
  CHECK(res.elements.empty());

  // One extraneous node inside the ellipsoid contributes the node diameter.
  Graph with_node = Graph::build(4, {{0, 1}, {1, 2}});
  auto l4 = layout_of({{0, 0, 0}, {0.5, 0.2, 0}, {1, 0, 0}, {0.5, 0.1, 0}});
  auto noisy = graphtic::task2_noise(with_node, l4, 0, 2);
  CHECK(noisy.total == doctest::Approx(2.0 * l4.node_radius));
  REQUIRE(noisy.elements.size() == 1);
  CHECK_FALSE(noisy.elements[0].is_edge());
}

TEST_CASE("shortest-path noise census matches dense sampling") {
  std::mt19937 rng(504);
  int checked = 0;
  while (checked < 30) {
    int n = 6 + static_cast<int>(rng() % 16);
    Graph g = oracle::random_connected_graph(rng, n, 0.8);
    auto layout = layout_of(oracle::random_positions(rng, n, 1.5));
    NodeId u = rng() % n;
    NodeId v = rng() % n;
    if (u == v) continue;
    NoiseResult res;
    try {
      res = graphtic::task2_noise(g, layout, u, v);
    } catch (const std::runtime_error&) {
      continue;  // pair exceeded the path cap
    }
    CHECK(element_set(res) == census_task2(g, layout, res.path, res.region));
    double sum = 0.0;
    for (const auto& e : res.elements) sum += e.mu;
    CHECK(res.total == doctest::Approx(sum));
    ++checked;
  }
}

TEST_CASE("shortest-path noise minimizes over the candidate paths") {
  std::mt19937 rng(505);
  int checked = 0;
  while (checked < 15) {
    int n = 6 + static_cast<int>(rng() % 12);
    Graph g = oracle::random_connected_graph(rng, n, 1.2);
    auto layout = layout_of(oracle::random_positions(rng, n, 1.2));
    NodeId u = rng() % n;
    NodeId v = rng() % n;
    if (u == v || g.has_edge(u, v)) continue;
    auto en = graphtic::enumerate_shortest_paths(g, u, v, 64);
    if (en.exceeded) continue;
    auto res = graphtic::task2_noise(g, layout, u, v);
    ComplexityParams params;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& path : en.paths) {
      std::vector<Vec3> pts;
      for (NodeId w : path) pts.push_back(layout.positions[w]);
      graphtic::MveeParams mp = params.mvee;
      mp.min_thickness = layout.edge_radius;
      Quadric region = graphtic::mvee(pts, mp);
      double total = 0.0;
      for (const auto& [a, b] : census_task2(g, layout, path, region)) {
        if (a == b)
          total += 2.0 * layout.node_radius;
        else
          total += graphtic::distance(layout.positions[a], layout.positions[b]);
      }
      best = std::min(best, total);
    }
    CHECK(res.total == doctest::Approx(best).epsilon(1e-9));
    ++checked;
  }
}

TEST_CASE("noise grows monotonically under element insertion") {
  std::mt19937 rng(506);
  std::uniform_real_distribution<double> coord(-0.2, 1.7);
  int done = 0;
  while (done < 100) {
    int n = 6 + static_cast<int>(rng() % 12);
    Graph g = oracle::random_connected_graph(rng, n, 0.9);
    auto layout = layout_of(oracle::random_positions(rng, n, 1.5));
    NodeId u = rng() % n;
    NodeId v = rng() % n;
    if (u == v) continue;

    double before1 = 0.0, before2 = 0.0;
    try {
      before1 = graphtic::task1_noise(g, layout, u, v).total;
      before2 = graphtic::task2_noise(g, layout, u, v).total;
    } catch (const std::runtime_error&) {
      continue;  // pair exceeded the path cap
    }

    // Mutation A: an isolated node somewhere in space. It can enter any
    // region but changes no degrees, neighborhoods, or shortest paths.
    {
      std::vector<std::pair<NodeId, NodeId>> edges = g.edges();
      Graph grown = Graph::build(n + 1, edges);
      Layout3D grown_layout = layout;
      grown_layout.positions.push_back({coord(rng), coord(rng), coord(rng)});
      CHECK(graphtic::task1_noise(grown, grown_layout, u, v).total >=
            before1 - 1e-12);
      CHECK(graphtic::task2_noise(grown, grown_layout, u, v).total >=
            before2 - 1e-12);
    }

    // Mutation B: an extra edge away from the queried pair. Valid for the
    // common-neighbors census only; shortcuts could reroute task-2 paths.
    {
      NodeId x = rng() % n;
      NodeId y = rng() % n;
      if (x != y && x != u && x != v && y != u && y != v && !g.has_edge(x, y)) {
        std::vector<std::pair<NodeId, NodeId>> edges = g.edges();
        edges.push_back({x, y});
        Graph grown = Graph::build(n, edges);
        CHECK(graphtic::task1_noise(grown, layout, u, v).total >= before1 - 1e-12);
      }
    }
    ++done;
  }
}

TEST_CASE("combined score follows the log rule") {
  // Signal forced to zero (common neighbor on the segment), noise forced to
  // exactly 1 by a unit-length distractor edge: combined = 0 + ln 1 = 0.
  Graph g = Graph::build(5, {{0, 2}, {1, 2}, {3, 4}});
  ComplexityParams zero_nodes;
  zero_nodes.mu_node = MuNodeMode::Zero;
  auto flat = layout_of(
      {{0, 0, 0}, {1, 0, 0}, {0.5, 0, 0}, {0.5, 0.5, 0}, {0.5, -0.5, 0}});
  auto score = graphtic::score_instance(g, flat, TaskKind::CommonNeighbors, 0, 1,
                                        zero_nodes);
  CHECK(score.signal == 0.0);
  CHECK(score.noise == 1.0);
  REQUIRE(score.combined.has_value());
  CHECK(*score.combined == 0.0);

  // Signal 2 with noise e gives combined 3.
  double y = std::sqrt((1.0 + std::sqrt(0.5)) * (1.0 + std::sqrt(0.5)) - 1.0);
  double e = std::exp(1.0);
  auto tall = layout_of(
      {{0, 0, 0}, {2, 0, 0}, {1, y, 0}, {1, 0, -e / 2}, {1, 0, e / 2}});
  auto s2 = graphtic::score_instance(g, tall, TaskKind::CommonNeighbors, 0, 1,
                                     zero_nodes);
  CHECK(s2.signal == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(s2.noise == doctest::Approx(e).epsilon(1e-12));
  REQUIRE(s2.combined.has_value());
  CHECK(*s2.combined == doctest::Approx(3.0).epsilon(1e-9));

  // Noise-free instances leave combined undefined.
  Graph quiet = Graph::build(3, {{0, 2}, {1, 2}});
  auto ql = layout_of({{0, 0, 0}, {1, 0, 0}, {0.5, 0.3, 0}});
  auto s3 = graphtic::score_instance(quiet, ql, TaskKind::CommonNeighbors, 0, 1);
  CHECK(s3.noise == 0.0);
  CHECK_FALSE(s3.combined.has_value());
  CHECK(s3.signal >= 0.0);
}

TEST_CASE("fill ratio forced values") {
  Graph empty = Graph::build(0, {});
  Layout3D none;
  none.bounds = {{0, 0, 0}, {1, 1, 1}};
  CHECK(graphtic::fill_ratio(empty, none, 1.0).ratio == 0.0);

  Graph one = Graph::build(1, {});
  Layout3D single;
  single.positions = {{0, 0, 0}};
  single.node_radius = 0.01;
  single.bounds = {{-1, -1, -1}, {1, 1, 1}};
  double ball = 4.0 / 3.0 * 3.14159265358979323846 * std::pow(0.01, 3);
  auto fr = graphtic::fill_ratio(one, single, ball);
  CHECK(fr.ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fr.exact);

  CHECK_THROWS_AS(graphtic::fill_ratio(one, single, 0.0), std::invalid_argument);
}

TEST_CASE("fill ratio on a study-scale layout is stable and near Monte Carlo") {
  Graph g = graphtic::synth_graph(41);
  graphtic::StressParams params;
  params.restarts = 1;
  params.max_iter = 60;
  params.tol = 1e-4;
  auto res = graphtic::stress_layout(g, 8, params);
  graphtic::normalize_to_view(res.layout);

  auto fr = graphtic::fill_ratio(g, res.layout, res.layout.bounds.volume(), 17);
  CHECK(fr.ratio > 0.0);
  CHECK(fr.ratio < 1.0);

  auto again = graphtic::fill_ratio(g, res.layout, res.layout.bounds.volume(), 17);
  CHECK(std::abs(fr.ratio - again.ratio) < 1e-6);

  double mc = oracle::mc_scene_volume(g, res.layout, 20000, 1234);
  CHECK(fr.clipped_volume == doctest::Approx(mc).epsilon(0.02));
}

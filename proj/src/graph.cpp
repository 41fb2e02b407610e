#include "graphtic/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace graphtic {

Graph Graph::build(int node_count, std::vector<std::pair<NodeId, NodeId>> edges,
                   std::vector<std::string> labels) {
  if (node_count < 0) throw std::invalid_argument("node_count must be non-negative");
  Graph g;
  g.node_count_ = node_count;

  std::set<std::pair<NodeId, NodeId>> seen;
  for (auto& [a, b] : edges) {
    if (a < 0 || a >= node_count || b < 0 || b >= node_count)
      throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(a) +
                                  ", " + std::to_string(b) + ")");
    if (a == b) throw std::invalid_argument("self-loop at node " + std::to_string(a));
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ")");
  }
  g.edges_.assign(seen.begin(), seen.end());

  g.adjacency_.resize(node_count);
  for (auto [a, b] : g.edges_) {
    g.adjacency_[a].push_back(b);
    g.adjacency_[b].push_back(a);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());

  if (labels.empty()) {
    g.labels_.reserve(node_count);
    for (int v = 0; v < node_count; ++v) g.labels_.push_back(std::to_string(v));
  } else {
    if (static_cast<int>(labels.size()) != node_count)
      throw std::invalid_argument("label count does not match node count");
    g.labels_ = std::move(labels);
  }
  return g;
}

void Graph::check_node(NodeId v) const {
  if (v < 0 || v >= node_count_)
    throw std::invalid_argument("node id out of range: " + std::to_string(v));
}

const std::vector<NodeId>& Graph::neighbors(NodeId v) const {
  check_node(v);
  return adjacency_[v];
}

bool Graph::has_edge(NodeId a, NodeId b) const {
  check_node(a);
  check_node(b);
  const auto& nbrs = adjacency_[a];
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

const std::string& Graph::label(NodeId v) const {
  check_node(v);
  return labels_[v];
}

std::vector<NodeId> common_neighbors(const Graph& g, NodeId u, NodeId v) {
  const auto& nu = g.neighbors(u);
  const auto& nv = g.neighbors(v);
  std::vector<NodeId> out;
  std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(),
                        std::back_inserter(out));
  out.erase(std::remove_if(out.begin(), out.end(),
                           [&](NodeId w) { return w == u || w == v; }),
            out.end());
  return out;
}

std::vector<int> bfs_distances(const Graph& g, NodeId src) {
  g.check_node(src);
  std::vector<int> dist(g.node_count(), -1);
  dist[src] = 0;
  std::deque<NodeId> queue{src};
  while (!queue.empty()) {
    NodeId cur = queue.front();
    queue.pop_front();
    for (NodeId nxt : g.neighbors(cur)) {
      if (dist[nxt] < 0) {
        dist[nxt] = dist[cur] + 1;
        queue.push_back(nxt);
      }
    }
  }
  return dist;
}

int shortest_path_length(const Graph& g, NodeId u, NodeId v) {
  g.check_node(v);
  int d = bfs_distances(g, u)[v];
  if (d < 0)
    throw std::runtime_error("nodes " + std::to_string(u) + " and " + std::to_string(v) +
                             " are not connected");
  return d;
}

namespace {

long long saturating_add(long long a, long long b, long long cap) {
  long long s = a + b;
  return s > cap ? cap : s;
}

}  // namespace

long long count_shortest_paths(const Graph& g, NodeId u, NodeId v, long long cap) {
  g.check_node(u);
  g.check_node(v);
  // Saturating arithmetic keeps the DP safe on graphs with exponentially many
  // shortest paths; any count above cap collapses to cap + 1.
  const long long sat = cap + 1;
  std::vector<int> dist = bfs_distances(g, u);
  if (dist[v] < 0) return 0;
  std::vector<long long> count(g.node_count(), 0);
  count[u] = 1;
  // Process nodes in BFS-layer order: counts only flow from layer d to d+1.
  std::vector<NodeId> order;
  for (NodeId x = 0; x < g.node_count(); ++x)
    if (dist[x] >= 0 && dist[x] <= dist[v]) order.push_back(x);
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return dist[a] < dist[b]; });
  for (NodeId x : order) {
    if (x == u) continue;
    for (NodeId p : g.neighbors(x))
      if (dist[p] >= 0 && dist[p] + 1 == dist[x])
        count[x] = saturating_add(count[x], count[p], sat);
  }
  return count[v];
}

PathEnumeration enumerate_shortest_paths(const Graph& g, NodeId u, NodeId v, int cap) {
  PathEnumeration result;
  if (cap < 1) throw std::invalid_argument("path cap must be positive");
  long long n = count_shortest_paths(g, u, v, cap);
  if (n == 0)
    throw std::runtime_error("nodes " + std::to_string(u) + " and " + std::to_string(v) +
                             " are not connected");
  if (n > cap) {
    result.exceeded = true;
    return result;
  }
  std::vector<int> dist_u = bfs_distances(g, u);
  std::vector<int> dist_v = bfs_distances(g, v);
  const int total = dist_u[v];
  // DFS over the shortest-path DAG. Neighbor lists are sorted, so paths come
  // out in lexicographic node-sequence order.
  std::vector<NodeId> path{u};
  std::vector<std::vector<NodeId>>& out = result.paths;
  struct Frame {
    NodeId node;
    size_t next;
  };
  std::vector<Frame> stack{{u, 0}};
  while (!stack.empty()) {
    if (stack.back().node == v) {
      out.push_back(path);
      stack.pop_back();
      path.pop_back();
      continue;
    }
    const auto& nbrs = g.neighbors(stack.back().node);
    NodeId descend = -1;
    while (stack.back().next < nbrs.size()) {
      NodeId w = nbrs[stack.back().next++];
      if (dist_u[w] == dist_u[stack.back().node] + 1 && dist_u[w] + dist_v[w] == total) {
        descend = w;
        break;
      }
    }
    if (descend >= 0) {
      stack.push_back({descend, 0});
      path.push_back(descend);
    } else {
      stack.pop_back();
      path.pop_back();
    }
  }
  return result;
}

std::vector<NodeId> lex_first_shortest_path(const Graph& g, NodeId u, NodeId v) {
  std::vector<int> dist_v = bfs_distances(g, v);
  if (dist_v[u] < 0)
    throw std::runtime_error("nodes " + std::to_string(u) + " and " + std::to_string(v) +
                             " are not connected");
  // Greedy walk toward v: at each step take the smallest neighbor that still
  // lies on some shortest path. Sorted adjacency makes this the lex-first path.
  std::vector<NodeId> path{u};
  NodeId cur = u;
  while (cur != v) {
    for (NodeId w : g.neighbors(cur)) {
      if (dist_v[w] == dist_v[cur] - 1) {
        path.push_back(w);
        cur = w;
        break;
      }
    }
  }
  return path;
}

bool is_connected(const Graph& g) {
  if (g.node_count() == 0) return true;
  std::vector<int> dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

ComponentExtraction largest_component(const Graph& g) {
  std::vector<int> comp(g.node_count(), -1);
  std::vector<int> size;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (comp[v] >= 0) continue;
    int id = static_cast<int>(size.size());
    size.push_back(0);
    std::deque<NodeId> queue{v};
    comp[v] = id;
    while (!queue.empty()) {
      NodeId cur = queue.front();
      queue.pop_front();
      ++size[id];
      for (NodeId nxt : g.neighbors(cur)) {
        if (comp[nxt] < 0) {
          comp[nxt] = id;
          queue.push_back(nxt);
        }
      }
    }
  }

  ComponentExtraction out;
  if (size.empty()) return out;
  // Components are discovered in order of their smallest member, so max_element
  // ties resolve toward the component containing the smallest node id.
  int best = static_cast<int>(std::max_element(size.begin(), size.end()) - size.begin());

  std::vector<NodeId> remap(g.node_count(), -1);
  std::vector<std::string> labels;
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (comp[v] == best) {
      remap[v] = static_cast<NodeId>(out.kept.size());
      out.kept.push_back(v);
      labels.push_back(g.label(v));
    }
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (auto [a, b] : g.edges())
    if (comp[a] == best && comp[b] == best) edges.push_back({remap[a], remap[b]});
  out.graph = Graph::build(static_cast<int>(out.kept.size()), std::move(edges),
                           std::move(labels));
  return out;
}

}  // namespace graphtic

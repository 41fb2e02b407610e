#include "graphtic/properties.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace graphtic {

GlobalProperties global_properties(const Graph& g) {
  GlobalProperties out;
  out.nodes = g.node_count();
  out.edges = g.edge_count();
  if (out.nodes >= 2)
    out.density = 2.0 * out.edges / (static_cast<double>(out.nodes) * (out.nodes - 1));
  return out;
}

double clustering_coefficient(const Graph& g, NodeId v) {
  const auto& nbrs = g.neighbors(v);
  const int deg = static_cast<int>(nbrs.size());
  if (deg < 2) return 0.0;
  int links = 0;
  for (size_t i = 0; i < nbrs.size(); ++i)
    for (size_t j = i + 1; j < nbrs.size(); ++j)
      if (g.has_edge(nbrs[i], nbrs[j])) ++links;
  return 2.0 * links / (static_cast<double>(deg) * (deg - 1));
}

std::vector<double> betweenness_centrality(const Graph& g) {
  const int n = g.node_count();
  std::vector<double> cb(n, 0.0);
  if (n <= 2) return cb;

  std::vector<double> sigma(n), delta(n);
  std::vector<int> dist(n);
  std::vector<std::vector<NodeId>> pred(n);
  std::vector<NodeId> order;
  order.reserve(n);

  for (NodeId s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    for (auto& p : pred) p.clear();
    order.clear();

    sigma[s] = 1.0;
    dist[s] = 0;
    std::deque<NodeId> queue{s};
    while (!queue.empty()) {
      NodeId v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (NodeId w : g.neighbors(v)) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue.push_back(w);
        }
        if (dist[w] == dist[v] + 1) {
          sigma[w] += sigma[v];
          pred[w].push_back(v);
        }
      }
    }

    std::fill(delta.begin(), delta.end(), 0.0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId w = *it;
      for (NodeId v : pred[w]) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      if (w != s) cb[w] += delta[w];
    }
  }

  // Brandes counts ordered (s, t) pairs; dividing by (n-1)(n-2) both folds the
  // two orientations together and rescales to a [0, 1] fraction.
  double scale = 1.0 / (static_cast<double>(n - 1) * (n - 2));
  for (double& c : cb) c *= scale;
  return cb;
}

double local_density(const Graph& g, NodeId u, NodeId v) {
  g.check_node(u);
  g.check_node(v);
  std::set<NodeId> s{u, v};
  for (NodeId w : g.neighbors(u)) s.insert(w);
  for (NodeId w : g.neighbors(v)) s.insert(w);
  const int k = static_cast<int>(s.size());
  if (k < 2) return 0.0;
  int inside = 0;
  for (auto [a, b] : g.edges())
    if (s.count(a) && s.count(b)) ++inside;
  return 2.0 * inside / (static_cast<double>(k) * (k - 1));
}

double local_clustering(const Graph& g, NodeId u, NodeId v) {
  return 0.5 * (clustering_coefficient(g, u) + clustering_coefficient(g, v));
}

double degree_centrality(const Graph& g, NodeId u, NodeId v) {
  const int n = g.node_count();
  if (n < 2) return 0.0;
  return 0.5 * (g.degree(u) + g.degree(v)) / (n - 1.0);
}

double path_betweenness(const Graph& g, NodeId u, NodeId v,
                        const std::vector<double>& centrality) {
  if (static_cast<int>(centrality.size()) != g.node_count())
    throw std::invalid_argument("centrality vector does not match graph");
  std::vector<NodeId> path = lex_first_shortest_path(g, u, v);
  if (path.size() <= 2) return 0.0;
  double total = 0.0;
  for (size_t i = 1; i + 1 < path.size(); ++i) total += centrality[path[i]];
  return total / static_cast<double>(path.size() - 2);
}

double path_betweenness(const Graph& g, NodeId u, NodeId v) {
  return path_betweenness(g, u, v, betweenness_centrality(g));
}

double PairProperties::operator[](int i) const {
  switch (i) {
    case 0: return local_density;
    case 1: return local_clustering;
    case 2: return degree_centrality;
    case 3: return path_betweenness;
    default: throw std::out_of_range("pair property index");
  }
}

const char* PairProperties::name(int i) {
  switch (i) {
    case 0: return "local_density";
    case 1: return "local_clustering";
    case 2: return "degree_centrality";
    case 3: return "path_betweenness";
    default: throw std::out_of_range("pair property index");
  }
}

PairProperties pair_properties(const Graph& g, NodeId u, NodeId v,
                               const std::vector<double>& centrality) {
  PairProperties out;
  out.local_density = local_density(g, u, v);
  out.local_clustering = local_clustering(g, u, v);
  out.degree_centrality = degree_centrality(g, u, v);
  out.path_betweenness = path_betweenness(g, u, v, centrality);
  return out;
}

}  // namespace graphtic

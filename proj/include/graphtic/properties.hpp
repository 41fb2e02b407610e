#pragma once

#include <vector>

#include "graphtic/graph.hpp"

namespace graphtic {

struct GlobalProperties {
  int nodes = 0;
  int edges = 0;
  double density = 0.0;  // 2m / (n (n - 1)); 0 for n < 2
};

GlobalProperties global_properties(const Graph& g);

/// 2 * (edges among neighbors of v) / (deg (deg - 1)); 0 when deg < 2.
double clustering_coefficient(const Graph& g, NodeId v);

/// Exact betweenness centrality for every node (Brandes), normalized to the
/// fraction of non-incident node pairs whose shortest paths pass through the
/// node: values lie in [0, 1]. All zeros when n <= 2.
std::vector<double> betweenness_centrality(const Graph& g);

/// Edge density of the subgraph induced on {u, v} together with all their
/// neighbors. The neighborhood union is taken as a plain node set, so the
/// count includes edges among the neighbors themselves.
double local_density(const Graph& g, NodeId u, NodeId v);

/// Mean of the two endpoint clustering coefficients (measured in the full
/// graph, not the induced neighborhood).
double local_clustering(const Graph& g, NodeId u, NodeId v);

/// Mean of deg(u) and deg(v), each divided by n - 1.
double degree_centrality(const Graph& g, NodeId u, NodeId v);

/// Mean normalized betweenness over the interior nodes of the
/// lexicographically first shortest u-v path; 0 when the path has no
/// interior. The overload taking `centrality` avoids recomputing Brandes
/// per pair; it must come from betweenness_centrality on the same graph.
double path_betweenness(const Graph& g, NodeId u, NodeId v);
double path_betweenness(const Graph& g, NodeId u, NodeId v,
                        const std::vector<double>& centrality);

/// The four controlled pair measures in one struct, in a fixed order used by
/// the outlier filter: local_density, local_clustering, degree_centrality,
/// path_betweenness.
struct PairProperties {
  double local_density = 0.0;
  double local_clustering = 0.0;
  double degree_centrality = 0.0;
  double path_betweenness = 0.0;

  static constexpr int kCount = 4;
  double operator[](int i) const;
  static const char* name(int i);
};

PairProperties pair_properties(const Graph& g, NodeId u, NodeId v,
                               const std::vector<double>& centrality);

}  // namespace graphtic

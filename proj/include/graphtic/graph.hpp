#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace graphtic {

using NodeId = int;

/// Undirected simple graph over dense node ids 0..n-1.
/// Immutable after construction; every query is read-only.
class Graph {
 public:
  Graph() = default;

  /// Validates and canonicalizes the edge set. Throws std::invalid_argument on
  /// self-loops, duplicate edges (in either orientation) or ids out of range.
  /// Labels default to the decimal node id.
  static Graph build(int node_count, std::vector<std::pair<NodeId, NodeId>> edges,
                     std::vector<std::string> labels = {});

  int node_count() const { return node_count_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /// Canonical edge list: a < b, sorted lexicographically.
  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }

  /// Sorted neighbor list.
  const std::vector<NodeId>& neighbors(NodeId v) const;

  int degree(NodeId v) const { return static_cast<int>(neighbors(v).size()); }
  bool has_edge(NodeId a, NodeId b) const;
  const std::string& label(NodeId v) const;
  const std::vector<std::string>& labels() const { return labels_; }

  void check_node(NodeId v) const;  // throws std::invalid_argument

 private:
  int node_count_ = 0;
  std::vector<std::pair<NodeId, NodeId>> edges_;
  std::vector<std::vector<NodeId>> adjacency_;
  std::vector<std::string> labels_;
};

/// N_uv: nodes adjacent to both u and v, excluding u and v themselves.
std::vector<NodeId> common_neighbors(const Graph& g, NodeId u, NodeId v);

/// BFS hop distances from src; unreachable nodes get -1.
std::vector<int> bfs_distances(const Graph& g, NodeId src);

/// Hop distance between u and v. Throws std::runtime_error when unreachable.
int shortest_path_length(const Graph& g, NodeId u, NodeId v);

/// Number of distinct shortest u-v paths, saturated at `cap + 1`.
long long count_shortest_paths(const Graph& g, NodeId u, NodeId v, long long cap);

struct PathEnumeration {
  std::vector<std::vector<NodeId>> paths;  // each starts at u, ends at v
  bool exceeded = false;                   // count above cap; paths left empty
};

/// All distinct shortest u-v paths via backtracking over the BFS predecessor
/// DAG, in lexicographic node-sequence order. When the path count exceeds
/// `cap`, sets `exceeded` instead of materializing.
PathEnumeration enumerate_shortest_paths(const Graph& g, NodeId u, NodeId v, int cap);

/// Lexicographically smallest shortest path from u to v.
std::vector<NodeId> lex_first_shortest_path(const Graph& g, NodeId u, NodeId v);

bool is_connected(const Graph& g);

struct ComponentExtraction {
  Graph graph;
  std::vector<NodeId> kept;  // new id -> old id
};

/// Largest connected component with ids re-densified (ties broken toward the
/// component containing the smallest node id). Labels carried over.
ComponentExtraction largest_component(const Graph& g);

}  // namespace graphtic

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphtic/complexity.hpp"
#include "graphtic/graph.hpp"
#include "graphtic/layout.hpp"
#include "graphtic/properties.hpp"

namespace graphtic {

/// Pair-local measures controlled during sampling, plus the two geometric
/// annotations carried along for export.
struct LocalProperties {
  double local_density = 0.0;
  double local_clustering = 0.0;
  double degree_centrality = 0.0;
  double path_betweenness = 0.0;
  double euclidean_node_distance = 0.0;
  double fill_ratio = 0.0;  // graph-level, identical for all pairs of a graph
};

LocalProperties local_properties(const Graph& g, const Layout3D& layout, NodeId u,
                                 NodeId v, const std::vector<double>& centrality,
                                 double graph_fill_ratio);

/// A scoreable node pair. The degree convention deg(u) <= deg(v) (ties toward
/// the smaller id) is applied at construction.
struct NodePairCandidate {
  NodeId u = 0;
  NodeId v = 0;
  TaskKind task = TaskKind::CommonNeighbors;
  int answer = 0;  // common-neighbor count, or path length in edges
  LocalProperties props;
};

/// All pairs with answer >= 1 for the task, with properties attached.
/// Shortest-path pairs whose path count exceeds path_cap are dropped.
/// graph_fill_ratio < 0 recomputes it from the layout bounds.
std::vector<NodePairCandidate> enumerate_candidates(const Graph& g,
                                                    const Layout3D& layout,
                                                    TaskKind task, int path_cap = 64,
                                                    double graph_fill_ratio = -1.0);

struct OutlierFilter {
  std::vector<NodePairCandidate> kept;
  std::vector<NodePairCandidate> removed;
  std::vector<std::string> skipped;  // zero-variance properties, per task
};

/// Removes candidates with |z| >= 2 on any property controlled for their
/// task (density and clustering always; degree centrality for the
/// common-neighbors task, path betweenness for the shortest-path task).
/// z-scores use the sample standard deviation over candidates of the same
/// task in `cands`, so the input must come from a single graph. Properties
/// with zero variance are skipped and reported. Throws below 3 candidates.
OutlierFilter filter_outliers(const std::vector<NodePairCandidate>& cands);

struct TaskInstance {
  std::string id;  // "g{graph}-{cn|sp}-{u}-{v}"
  int graph_id = -1;
  TaskKind task = TaskKind::CommonNeighbors;
  NodeId u = 0;
  NodeId v = 0;
  int answer = 0;
  ComplexityScore score;
  LocalProperties props;
};

std::string instance_id(int graph_id, TaskKind task, NodeId u, NodeId v);

const char* task_name(TaskKind task);                // "cn" | "sp"
TaskKind parse_task(const std::string& name);        // throws on unknown

struct SessionConfig {
  int instances_per_task = 12;
  int pairings = 4;  // units = 2 * pairings
  int cn_answer_min = 2;
  int cn_answer_max = 11;
  int sp_answer_min = 3;
  int sp_answer_max = 16;
  double density_min = 0.03;
  double density_max = 0.07;
  ComplexityParams scoring;
};

struct PlanUnit {
  int unit = 0;
  int pairing = 0;
  TaskKind first_task = TaskKind::CommonNeighbors;
};

/// A full session plan. Paired units (2p, 2p+1) share the same two series;
/// the first starts with common neighbors, the second with shortest paths,
/// so task order is exactly counterbalanced. Each unit answers the control
/// instance of its first task, then its two series: 1 + 12 + 12 answers.
struct SessionPlan {
  std::uint64_t seed = 0;
  SessionConfig config;
  std::vector<int> graphs_used;      // corpus indices that passed the density filter
  std::vector<int> graphs_rejected;  // corpus indices filtered out
  TaskInstance control_cn;
  TaskInstance control_sp;
  std::vector<PlanUnit> units;
  // Per pairing, the shared instance series.
  std::vector<std::vector<TaskInstance>> cn_series;
  std::vector<std::vector<TaskInstance>> sp_series;
  std::vector<std::string> notes;  // stratum skew, skipped graphs, filter logs
};

/// The answer sequence of one unit: control first, then the unit's
/// first-task series, then the other series.
std::vector<TaskInstance> answer_sequence(const SessionPlan& plan, const PlanUnit& unit);

/// Samples a complete counterbalanced plan. Graphs outside the density window
/// are excluded. Candidate pools are outlier-filtered per graph and stratified
/// by answer value; draws cycle round-robin over a shuffled stratum order,
/// skipping exhausted strata, and never repeat a graph within a pairing or an
/// instance within the plan. The control instance per task is the candidate
/// with minimal combined complexity (noise-free first) in the lowest populated
/// answer stratum; control graphs are reserved. Deterministic under seed.
/// Throws std::runtime_error naming the strata when a series cannot be filled.
SessionPlan sample_plan(const std::vector<Graph>& graphs,
                        const std::vector<Layout3D>& layouts,
                        const SessionConfig& config, std::uint64_t seed);

}  // namespace graphtic

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "graphtic/evaluate.hpp"
#include "graphtic/graph.hpp"
#include "graphtic/instances.hpp"
#include "graphtic/layout.hpp"

namespace graphtic {

/// All documents keep their key insertion order so reruns serialize
/// byte-identically.
using Json = nlohmann::ordered_json;

/// Input path that cannot be opened; the CLI maps this to exit code 2.
struct FileNotFound : std::runtime_error {
  explicit FileNotFound(std::string p)
      : std::runtime_error("missing input file: " + p), path(std::move(p)) {}
  std::string path;
};

std::uint64_t fnv1a64(std::string_view data);
std::string hex64(std::uint64_t value);  // 16 lowercase hex digits

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

std::string read_text_file(const std::string& path);  // throws FileNotFound
/// Creates parent directories as needed.
void write_text_file(const std::string& path, const std::string& content);

/// Edge-list text: one `a b` pair per line, `#` starts a comment, blank lines
/// skipped. Node tokens are remapped to dense ids in first-appearance order;
/// the original tokens become the labels.
struct EdgeListResult {
  Graph graph;
  std::vector<std::string> original_ids;  // dense id -> token
};
EdgeListResult parse_edge_list(const std::string& text);
EdgeListResult load_edge_list(const std::string& path);

Json graph_to_json(const Graph& g);
Graph graph_from_json(const Json& doc);

Json layout_to_json(const Layout3D& layout, const LayoutStats& stats);
std::pair<Layout3D, LayoutStats> layout_from_json(const Json& doc);

Json plan_to_json(const SessionPlan& plan);
SessionPlan plan_from_json(const Json& doc);

struct ComplexityRow {
  std::string instance_id;
  TaskKind task = TaskKind::CommonNeighbors;
  NodeId u = 0;
  NodeId v = 0;
  int answer = 0;
  ComplexityScore score;
};

/// Columns: instance_id, task, u, v, answer, signal, noise, combined, seed,
/// mu_node_mode, clip_mode. `combined` is empty when noise is zero.
std::string complexity_csv(const std::vector<ComplexityRow>& rows, std::uint64_t seed,
                           const ComplexityParams& params);
std::vector<ComplexityRow> parse_complexity_csv(const std::string& text);

/// Columns: unit_id, group_type, instance_id, member, answer, time_s.
std::string responses_csv(const std::vector<SessionRecord>& records);
std::vector<SessionRecord> parse_responses_csv(const std::string& text);

}  // namespace graphtic

#include "graphtic/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <tuple>

#include "graphtic/rng.hpp"

namespace graphtic {

namespace {

void check_params(const SynthParams& p) {
  if (p.mean_nodes <= 0.0 || p.sd_nodes < 0.0)
    throw std::invalid_argument("node count distribution must be positive");
  if (p.mean_density <= 0.0 || p.sd_density < 0.0)
    throw std::invalid_argument("density distribution must be positive");
  if (p.min_nodes < 2 || p.max_nodes < p.min_nodes)
    throw std::invalid_argument("node bounds must allow at least 2 nodes");
  if (p.box.x <= 0.0 || p.box.y <= 0.0 || p.box.z <= 0.0)
    throw std::invalid_argument("sampling box must have positive extents");
  if (p.max_attempts < 1) throw std::invalid_argument("max_attempts must be positive");
}

int draw_node_count(Rng& rng, const SynthParams& p) {
  for (int i = 0; i < 256; ++i) {
    int n = static_cast<int>(std::lround(rng.normal(p.mean_nodes, p.sd_nodes)));
    if (n >= p.min_nodes && n <= p.max_nodes) return n;
  }
  return p.min_nodes;  // truncation fallback; unreachable for sane parameters
}

double draw_density(Rng& rng, const SynthParams& p) {
  const double lo = std::max(p.mean_density - 3.0 * p.sd_density, 1e-4);
  const double hi = std::min(p.mean_density + 3.0 * p.sd_density, 1.0);
  for (int i = 0; i < 256; ++i) {
    double d = rng.normal(p.mean_density, p.sd_density);
    if (d >= lo && d <= hi) return d;
  }
  return p.mean_density;
}

}  // namespace

Graph synth_graph(std::uint64_t seed, const SynthParams& params) {
  check_params(params);

  for (int attempt = 0; attempt < params.max_attempts; ++attempt) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(attempt)));
    const int n = draw_node_count(rng, params);
    const double density = draw_density(rng, params);
    const long long pair_count = static_cast<long long>(n) * (n - 1) / 2;
    long long m = std::llround(density * static_cast<double>(pair_count));
    m = std::clamp(m, 1LL, pair_count);

    std::vector<Vec3> points;
    points.reserve(n);
    for (int i = 0; i < n; ++i)
      points.push_back({rng.uniform(0.0, params.box.x), rng.uniform(0.0, params.box.y),
                        rng.uniform(0.0, params.box.z)});

    // Connect the m closest pairs: a geometric graph whose threshold is the
    // m-th smallest pairwise distance, realizing the drawn density exactly.
    std::vector<std::tuple<double, NodeId, NodeId>> pairs;
    pairs.reserve(pair_count);
    for (NodeId a = 0; a < n; ++a)
      for (NodeId b = a + 1; b < n; ++b)
        pairs.emplace_back(distance(points[a], points[b]), a, b);
    std::nth_element(pairs.begin(), pairs.begin() + (m - 1), pairs.end());
    std::sort(pairs.begin(), pairs.begin() + m);

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(m);
    for (long long i = 0; i < m; ++i)
      edges.emplace_back(std::get<1>(pairs[i]), std::get<2>(pairs[i]));

    ComponentExtraction comp = largest_component(Graph::build(n, std::move(edges)));
    if (comp.graph.node_count() < static_cast<int>(std::ceil(0.95 * n))) continue;
    // Fresh decimal labels; the pre-extraction ids are meaningless here.
    return Graph::build(comp.graph.node_count(), comp.graph.edges());
  }
  throw std::runtime_error("synth_graph: no attempt kept 95% of nodes connected after " +
                           std::to_string(params.max_attempts) + " draws");
}

std::vector<Graph> synth_corpus(int count, std::uint64_t seed,
                                const SynthParams& params) {
  if (count < 1) throw std::invalid_argument("corpus count must be positive");
  std::vector<Graph> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(synth_graph(derive_seed(seed, 0x5331 + static_cast<std::uint64_t>(i)),
                              params));
  return out;
}

}  // namespace graphtic

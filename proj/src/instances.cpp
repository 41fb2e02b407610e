#include "graphtic/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>
#include <tuple>

#include "graphtic/rng.hpp"

namespace graphtic {

namespace {

std::pair<NodeId, NodeId> orient(const Graph& g, NodeId a, NodeId b) {
  if (g.degree(a) > g.degree(b) || (g.degree(a) == g.degree(b) && a > b))
    std::swap(a, b);
  return {a, b};
}

double property_value(const LocalProperties& p, int index) {
  switch (index) {
    case 0: return p.local_density;
    case 1: return p.local_clustering;
    case 2: return p.degree_centrality;
    case 3: return p.path_betweenness;
    default: throw std::out_of_range("property index");
  }
}

// Density and clustering are controlled for both tasks; degree centrality only
// for the common-neighbors task, path betweenness only for shortest paths.
std::vector<int> controlled_properties(TaskKind task) {
  return task == TaskKind::CommonNeighbors ? std::vector<int>{0, 1, 2}
                                           : std::vector<int>{0, 1, 3};
}

const char* task_tag(TaskKind task) {
  return task == TaskKind::CommonNeighbors ? "cn" : "sp";
}

}  // namespace

const char* task_name(TaskKind task) { return task_tag(task); }

TaskKind parse_task(const std::string& name) {
  if (name == "cn") return TaskKind::CommonNeighbors;
  if (name == "sp") return TaskKind::ShortestPath;
  throw std::invalid_argument("unknown task: " + name);
}

LocalProperties local_properties(const Graph& g, const Layout3D& layout, NodeId u,
                                 NodeId v, const std::vector<double>& centrality,
                                 double graph_fill_ratio) {
  if (static_cast<int>(layout.positions.size()) != g.node_count())
    throw std::invalid_argument("layout position count does not match graph");
  PairProperties p = pair_properties(g, u, v, centrality);
  LocalProperties out;
  out.local_density = p.local_density;
  out.local_clustering = p.local_clustering;
  out.degree_centrality = p.degree_centrality;
  out.path_betweenness = p.path_betweenness;
  out.euclidean_node_distance = distance(layout.positions[u], layout.positions[v]);
  out.fill_ratio = graph_fill_ratio;
  return out;
}

std::string instance_id(int graph_id, TaskKind task, NodeId u, NodeId v) {
  return "g" + std::to_string(graph_id) + "-" + task_tag(task) + "-" +
         std::to_string(u) + "-" + std::to_string(v);
}

std::vector<NodePairCandidate> enumerate_candidates(const Graph& g,
                                                    const Layout3D& layout,
                                                    TaskKind task, int path_cap,
                                                    double graph_fill_ratio) {
  if (static_cast<int>(layout.positions.size()) != g.node_count())
    throw std::invalid_argument("layout position count does not match graph");
  std::vector<double> centrality = betweenness_centrality(g);
  double fill = graph_fill_ratio;
  if (fill < 0.0) fill = fill_ratio(g, layout, layout.bounds.volume()).ratio;

  std::vector<NodePairCandidate> out;
  const int n = g.node_count();
  for (NodeId a = 0; a < n; ++a) {
    std::vector<int> dist;
    if (task == TaskKind::ShortestPath) dist = bfs_distances(g, a);
    for (NodeId b = a + 1; b < n; ++b) {
      int answer = 0;
      if (task == TaskKind::CommonNeighbors) {
        answer = static_cast<int>(common_neighbors(g, a, b).size());
        if (answer < 1) continue;
      } else {
        answer = dist[b];
        if (answer < 1) continue;  // disconnected pairs cannot be instances
        if (count_shortest_paths(g, a, b, path_cap) > path_cap) continue;
      }
      NodePairCandidate cand;
      std::tie(cand.u, cand.v) = orient(g, a, b);
      cand.task = task;
      cand.answer = answer;
      cand.props = local_properties(g, layout, cand.u, cand.v, centrality, fill);
      out.push_back(std::move(cand));
    }
  }
  return out;
}

OutlierFilter filter_outliers(const std::vector<NodePairCandidate>& cands) {
  if (cands.size() < 3)
    throw std::invalid_argument("outlier filtering needs at least 3 candidates");

  OutlierFilter out;
  std::vector<bool> remove(cands.size(), false);
  for (TaskKind task : {TaskKind::CommonNeighbors, TaskKind::ShortestPath}) {
    std::vector<size_t> members;
    for (size_t i = 0; i < cands.size(); ++i)
      if (cands[i].task == task) members.push_back(i);
    if (members.empty()) continue;

    for (int prop : controlled_properties(task)) {
      const char* prop_name = PairProperties::name(prop);
      if (members.size() < 2) {
        out.skipped.push_back(std::string(task_tag(task)) + ":" + prop_name +
                              " (too few candidates)");
        continue;
      }
      double mean = 0.0;
      for (size_t i : members) mean += property_value(cands[i].props, prop);
      mean /= static_cast<double>(members.size());
      double var = 0.0;
      for (size_t i : members) {
        double d = property_value(cands[i].props, prop) - mean;
        var += d * d;
      }
      var /= static_cast<double>(members.size() - 1);
      if (var <= 0.0) {
        out.skipped.push_back(std::string(task_tag(task)) + ":" + prop_name);
        continue;
      }
      double sd = std::sqrt(var);
      for (size_t i : members)
        if (std::abs(property_value(cands[i].props, prop) - mean) >= 2.0 * sd)
          remove[i] = true;
    }
  }
  for (size_t i = 0; i < cands.size(); ++i)
    (remove[i] ? out.removed : out.kept).push_back(cands[i]);
  return out;
}

std::vector<TaskInstance> answer_sequence(const SessionPlan& plan,
                                          const PlanUnit& unit) {
  const auto& cn = plan.cn_series.at(unit.pairing);
  const auto& sp = plan.sp_series.at(unit.pairing);
  std::vector<TaskInstance> seq;
  seq.reserve(1 + cn.size() + sp.size());
  bool cn_first = unit.first_task == TaskKind::CommonNeighbors;
  seq.push_back(cn_first ? plan.control_cn : plan.control_sp);
  const auto& first = cn_first ? cn : sp;
  const auto& second = cn_first ? sp : cn;
  seq.insert(seq.end(), first.begin(), first.end());
  seq.insert(seq.end(), second.begin(), second.end());
  return seq;
}

namespace {

struct PoolEntry {
  int graph = -1;
  NodePairCandidate cand;
};

using Pool = std::map<int, std::vector<PoolEntry>>;  // answer -> entries

struct Scorer {
  const std::vector<Graph>& graphs;
  const std::vector<Layout3D>& layouts;
  const ComplexityParams& params;
  std::map<std::tuple<int, int, NodeId, NodeId>, ComplexityScore> cache;

  const ComplexityScore& operator()(int gi, TaskKind task, NodeId u, NodeId v) {
    auto key = std::make_tuple(gi, static_cast<int>(task), u, v);
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, score_instance(graphs[gi], layouts[gi], task, u, v, params))
               .first;
    return it->second;
  }
};

TaskInstance make_instance(int gi, const NodePairCandidate& cand,
                           const ComplexityScore& score) {
  TaskInstance inst;
  inst.id = instance_id(gi, cand.task, cand.u, cand.v);
  inst.graph_id = gi;
  inst.task = cand.task;
  inst.u = cand.u;
  inst.v = cand.v;
  inst.answer = cand.answer;
  inst.score = score;
  inst.props = cand.props;
  return inst;
}

// Noise-free instances (combined undefined) sort below every finite value.
double control_key(const ComplexityScore& s) {
  return s.combined ? *s.combined : -std::numeric_limits<double>::infinity();
}

TaskInstance pick_control(const Pool& pool, TaskKind task, Scorer& scorer) {
  for (const auto& [answer, entries] : pool) {
    if (entries.empty()) continue;
    const PoolEntry* best = nullptr;
    double best_key = 0.0;
    for (const PoolEntry& e : entries) {
      double key = control_key(scorer(e.graph, task, e.cand.u, e.cand.v));
      if (!best || key < best_key) {
        best = &e;
        best_key = key;
      }
    }
    return make_instance(best->graph, best->cand,
                         scorer(best->graph, task, best->cand.u, best->cand.v));
  }
  throw std::runtime_error(std::string("no candidates available for the ") +
                           task_tag(task) + " control instance");
}

}  // namespace

SessionPlan sample_plan(const std::vector<Graph>& graphs,
                        const std::vector<Layout3D>& layouts,
                        const SessionConfig& config, std::uint64_t seed) {
  if (graphs.size() != layouts.size())
    throw std::invalid_argument("graph and layout counts differ");
  if (graphs.empty()) throw std::invalid_argument("empty corpus");
  if (config.pairings < 1) throw std::invalid_argument("pairings must be positive");
  if (config.instances_per_task < 1)
    throw std::invalid_argument("instances_per_task must be positive");
  if (config.cn_answer_min < 1 || config.cn_answer_min > config.cn_answer_max ||
      config.sp_answer_min < 1 || config.sp_answer_min > config.sp_answer_max)
    throw std::invalid_argument("answer ranges must be non-empty and start at 1+");

  SessionPlan plan;
  plan.seed = seed;
  plan.config = config;

  for (size_t i = 0; i < graphs.size(); ++i) {
    double density = global_properties(graphs[i]).density;
    if (density >= config.density_min && density <= config.density_max) {
      plan.graphs_used.push_back(static_cast<int>(i));
    } else {
      plan.graphs_rejected.push_back(static_cast<int>(i));
      plan.notes.push_back("graph " + std::to_string(i) + " rejected: density " +
                           std::to_string(density) + " outside window");
    }
  }
  if (plan.graphs_used.empty())
    throw std::runtime_error("no graphs pass the density filter");

  Pool cn_pool, sp_pool;
  for (int gi : plan.graphs_used) {
    const Graph& g = graphs[gi];
    const Layout3D& layout = layouts[gi];
    double fill = fill_ratio(g, layout, layout.bounds.volume()).ratio;
    for (TaskKind task : {TaskKind::CommonNeighbors, TaskKind::ShortestPath}) {
      auto cands = enumerate_candidates(g, layout, task, config.scoring.path_cap, fill);
      if (cands.size() < 3) {
        plan.notes.push_back("graph " + std::to_string(gi) + " excluded for " +
                             task_tag(task) + ": only " +
                             std::to_string(cands.size()) + " candidates");
        continue;
      }
      OutlierFilter filtered = filter_outliers(cands);
      for (const std::string& s : filtered.skipped)
        plan.notes.push_back("graph " + std::to_string(gi) +
                             " zero-variance property skipped: " + s);
      const bool cn = task == TaskKind::CommonNeighbors;
      const int lo = cn ? config.cn_answer_min : config.sp_answer_min;
      const int hi = cn ? config.cn_answer_max : config.sp_answer_max;
      Pool& pool = cn ? cn_pool : sp_pool;
      for (const NodePairCandidate& cand : filtered.kept)
        if (cand.answer >= lo && cand.answer <= hi)
          pool[cand.answer].push_back({gi, cand});
    }
  }

  Scorer scorer{graphs, layouts, config.scoring, {}};
  plan.control_cn = pick_control(cn_pool, TaskKind::CommonNeighbors, scorer);
  plan.control_sp = pick_control(sp_pool, TaskKind::ShortestPath, scorer);

  // Control graphs are reserved so no unit can meet them again in a series.
  std::set<int> reserved{plan.control_cn.graph_id, plan.control_sp.graph_id};
  for (Pool* pool : {&cn_pool, &sp_pool})
    for (auto& [answer, entries] : *pool)
      entries.erase(std::remove_if(entries.begin(), entries.end(),
                                   [&](const PoolEntry& e) {
                                     return reserved.count(e.graph) > 0;
                                   }),
                    entries.end());

  for (TaskKind task : {TaskKind::CommonNeighbors, TaskKind::ShortestPath}) {
    const bool cn = task == TaskKind::CommonNeighbors;
    const Pool& pool = cn ? cn_pool : sp_pool;
    const int lo = cn ? config.cn_answer_min : config.sp_answer_min;
    const int hi = cn ? config.cn_answer_max : config.sp_answer_max;
    std::string empty;
    for (int a = lo; a <= hi; ++a) {
      auto it = pool.find(a);
      if (it == pool.end() || it->second.empty())
        empty += (empty.empty() ? "" : ", ") + std::to_string(a);
    }
    if (!empty.empty())
      plan.notes.push_back(std::string(task_tag(task)) +
                           " answer strata with no candidates: " + empty);
  }

  std::set<std::string> used_instances;
  Rng master(seed);

  for (int p = 0; p < config.pairings; ++p) {
    std::set<int> used_graphs;
    for (TaskKind task : {TaskKind::CommonNeighbors, TaskKind::ShortestPath}) {
      const bool cn = task == TaskKind::CommonNeighbors;
      Rng rng = master.split(p).split(cn ? 0 : 1);
      const Pool& pool = cn ? cn_pool : sp_pool;
      const int lo = cn ? config.cn_answer_min : config.sp_answer_min;
      const int hi = cn ? config.cn_answer_max : config.sp_answer_max;

      std::vector<int> strata;
      for (int a = lo; a <= hi; ++a) strata.push_back(a);
      rng.shuffle(strata);

      std::vector<TaskInstance> series;
      size_t pointer = 0;
      for (int draw = 0; draw < config.instances_per_task; ++draw) {
        bool drawn = false;
        for (size_t scanned = 0; scanned < strata.size(); ++scanned) {
          int stratum = strata[(pointer + scanned) % strata.size()];
          auto it = pool.find(stratum);
          if (it == pool.end()) continue;
          std::vector<const PoolEntry*> eligible;
          for (const PoolEntry& e : it->second) {
            if (used_graphs.count(e.graph)) continue;
            if (used_instances.count(instance_id(e.graph, task, e.cand.u, e.cand.v)))
              continue;
            eligible.push_back(&e);
          }
          if (eligible.empty()) continue;
          const PoolEntry& e = *eligible[rng.below_int(static_cast<int>(eligible.size()))];
          used_graphs.insert(e.graph);
          used_instances.insert(instance_id(e.graph, task, e.cand.u, e.cand.v));
          series.push_back(
              make_instance(e.graph, e.cand, scorer(e.graph, task, e.cand.u, e.cand.v)));
          pointer = (pointer + scanned + 1) % strata.size();
          drawn = true;
          break;
        }
        if (!drawn) {
          std::string status;
          for (int a = lo; a <= hi; ++a) {
            auto it = pool.find(a);
            size_t have = it == pool.end() ? 0 : it->second.size();
            status += (status.empty() ? "" : ", ") + std::to_string(a) + ":" +
                      std::to_string(have);
          }
          throw std::runtime_error(
              std::string("cannot fill ") + task_tag(task) + " series for pairing " +
              std::to_string(p) + ": drew " + std::to_string(draw) + " of " +
              std::to_string(config.instances_per_task) +
              "; stratum candidate counts (answer:pool): " + status);
        }
      }
      (cn ? plan.cn_series : plan.sp_series).push_back(std::move(series));
    }
    plan.units.push_back({2 * p, p, TaskKind::CommonNeighbors});
    plan.units.push_back({2 * p + 1, p, TaskKind::ShortestPath});
  }
  return plan;
}

}  // namespace graphtic

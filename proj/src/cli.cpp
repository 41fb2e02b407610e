#include "graphtic/cli.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphtic/complexity.hpp"
#include "graphtic/evaluate.hpp"
#include "graphtic/graph.hpp"
#include "graphtic/instances.hpp"
#include "graphtic/io.hpp"
#include "graphtic/layout.hpp"
#include "graphtic/plot.hpp"
#include "graphtic/rng.hpp"
#include "graphtic/scene.hpp"

namespace graphtic {

namespace {

namespace fs = std::filesystem;

struct CliFailure : std::runtime_error {
  int code;
  CliFailure(int c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

Json read_json_file(const std::string& path) {
  std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

bool is_json_path(const std::string& path) {
  return fs::path(path).extension() == ".json";
}

// Graph inputs are either the JSON document or a plain edge list.
EdgeListResult load_graph_file(const std::string& path) {
  if (is_json_path(path)) {
    EdgeListResult out;
    out.graph = graph_from_json(read_json_file(path));
    return out;  // original_ids empty: ids were already dense
  }
  return load_edge_list(path);
}

Json props_json(const LocalProperties& p) {
  Json j;
  j["local_density"] = p.local_density;
  j["local_clustering"] = p.local_clustering;
  j["degree_centrality"] = p.degree_centrality;
  j["path_betweenness"] = p.path_betweenness;
  j["euclidean_node_distance"] = p.euclidean_node_distance;
  j["fill_ratio"] = p.fill_ratio;
  return j;
}

// Pipeline/session configuration document. Every block is optional except the
// graph list (pipeline only); missing keys keep their defaults.
struct RunConfig {
  std::vector<std::string> graph_paths;
  SessionConfig session;
  SceneStyle style;
  SceneView view;
  StressParams stress;
  double node_radius = 0.01;
  double edge_radius = 0.002;
  SimulationParams sim;
  int replicates = 10000;
  std::string group_a = "individual";
  std::string group_b = "ad_hoc_pair";
};

void parse_session_block(const Json& j, SessionConfig& c) {
  c.instances_per_task = j.value("instances_per_task", c.instances_per_task);
  c.pairings = j.value("pairings", c.pairings);
  c.cn_answer_min = j.value("cn_answer_min", c.cn_answer_min);
  c.cn_answer_max = j.value("cn_answer_max", c.cn_answer_max);
  c.sp_answer_min = j.value("sp_answer_min", c.sp_answer_min);
  c.sp_answer_max = j.value("sp_answer_max", c.sp_answer_max);
  c.density_min = j.value("density_min", c.density_min);
  c.density_max = j.value("density_max", c.density_max);
  if (j.contains("scoring")) {
    const Json& s = j.at("scoring");
    c.scoring.mu_node = parse_mu_node_mode(
        s.value("mu_node_mode", std::string(mu_node_mode_name(c.scoring.mu_node))));
    c.scoring.edge_noise = parse_edge_noise_mode(s.value(
        "edge_noise_mode", std::string(edge_noise_mode_name(c.scoring.edge_noise))));
    c.scoring.task2_mode = parse_task2_mode(
        s.value("task2_mode", std::string(task2_mode_name(c.scoring.task2_mode))));
    c.scoring.path_cap = s.value("path_cap", c.scoring.path_cap);
    c.scoring.node_probe_margin =
        s.value("node_probe_margin", c.scoring.node_probe_margin);
    if (s.contains("mvee")) {
      const Json& m = s.at("mvee");
      c.scoring.mvee.eps = m.value("eps", c.scoring.mvee.eps);
      c.scoring.mvee.max_iter = m.value("max_iter", c.scoring.mvee.max_iter);
      c.scoring.mvee.min_thickness = m.value("min_thickness", c.scoring.mvee.min_thickness);
    }
  }
}

RunConfig parse_run_config(const Json& doc, const fs::path& base_dir) {
  RunConfig cfg;
  if (doc.contains("graphs")) {
    for (const Json& p : doc.at("graphs")) {
      fs::path path = p.get<std::string>();
      if (path.is_relative()) path = base_dir / path;
      cfg.graph_paths.push_back(path.lexically_normal().string());
    }
  }
  if (doc.contains("session")) parse_session_block(doc.at("session"), cfg.session);
  if (doc.contains("style")) {
    const Json& s = doc.at("style");
    cfg.style.graph_color = s.value("graph_color", cfg.style.graph_color);
    cfg.style.selection_color = s.value("selection_color", cfg.style.selection_color);
  }
  if (doc.contains("view")) {
    const Json& v = doc.at("view");
    cfg.view.cube_side = v.value("cube_side", cfg.view.cube_side);
    cfg.view.barycenter_height =
        v.value("barycenter_height", cfg.view.barycenter_height);
  }
  if (doc.contains("layout")) {
    const Json& l = doc.at("layout");
    cfg.node_radius = l.value("node_radius", cfg.node_radius);
    cfg.edge_radius = l.value("edge_radius", cfg.edge_radius);
    cfg.stress.max_iter = l.value("max_iter", cfg.stress.max_iter);
    cfg.stress.tol = l.value("tol", cfg.stress.tol);
    cfg.stress.restarts = l.value("restarts", cfg.stress.restarts);
    cfg.stress.ideal_edge_length =
        l.value("ideal_edge_length", cfg.stress.ideal_edge_length);
    cfg.stress.cube_side = l.value("cube_side", cfg.stress.cube_side);
  }
  if (doc.contains("simulation")) {
    const Json& s = doc.at("simulation");
    cfg.sim.individual_answer_sd =
        s.value("individual_answer_sd", cfg.sim.individual_answer_sd);
    cfg.sim.pair_answer_sd = s.value("pair_answer_sd", cfg.sim.pair_answer_sd);
    cfg.sim.mean_log_time = s.value("mean_log_time", cfg.sim.mean_log_time);
    cfg.sim.log_time_sd = s.value("log_time_sd", cfg.sim.log_time_sd);
    cfg.sim.pair_time_factor = s.value("pair_time_factor", cfg.sim.pair_time_factor);
  }
  if (doc.contains("evaluate")) {
    const Json& e = doc.at("evaluate");
    cfg.replicates = e.value("replicates", cfg.replicates);
    cfg.group_a = e.value("group_a", cfg.group_a);
    cfg.group_b = e.value("group_b", cfg.group_b);
  }
  return cfg;
}

// Flag values, applied over the config when the user supplied them.
struct ScoringFlags {
  std::string mu_node = "diameter";
  std::string edge_noise = "full";
  std::string mode = "absolute";
  CLI::Option* mu_opt = nullptr;
  CLI::Option* edge_opt = nullptr;
  CLI::Option* mode_opt = nullptr;

  void add(CLI::App* sub) {
    mu_opt = sub->add_option("--mu-node", mu_node,
                             "node measure inside noise regions: diameter|zero")
                 ->envname("GRAPHTIC_MU_NODE")
                 ->check(CLI::IsMember({"diameter", "zero"}));
    edge_opt = sub->add_option("--edge-noise", edge_noise,
                               "edge measure inside noise regions: full|clipped")
                   ->envname("GRAPHTIC_EDGE_NOISE")
                   ->check(CLI::IsMember({"full", "clipped"}));
    mode_opt = sub->add_option("--mode", mode,
                               "distortion signal scaling: absolute|relative")
                   ->envname("GRAPHTIC_MODE")
                   ->check(CLI::IsMember({"absolute", "relative"}));
  }

  void apply(ComplexityParams& params) const {
    if (mu_opt && mu_opt->count()) params.mu_node = parse_mu_node_mode(mu_node);
    if (edge_opt && edge_opt->count())
      params.edge_noise = parse_edge_noise_mode(edge_noise);
    if (mode_opt && mode_opt->count()) params.task2_mode = parse_task2_mode(mode);
  }
};

struct RadiusFlags {
  double node_radius = 0.01;
  double edge_radius = 0.002;
  CLI::Option* node_opt = nullptr;
  CLI::Option* edge_opt = nullptr;

  void add(CLI::App* sub) {
    node_opt = sub->add_option("--node-radius", node_radius, "node ball radius, meters")
                   ->envname("GRAPHTIC_NODE_RADIUS")
                   ->check(CLI::PositiveNumber);
    edge_opt =
        sub->add_option("--edge-radius", edge_radius, "edge cylinder radius, meters")
            ->envname("GRAPHTIC_EDGE_RADIUS")
            ->check(CLI::PositiveNumber);
  }

  void apply(double& node, double& edge) const {
    if (node_opt && node_opt->count()) node = node_radius;
    if (edge_opt && edge_opt->count()) edge = edge_radius;
  }
};

Layout3D load_layout_file(const std::string& path) {
  return layout_from_json(read_json_file(path)).first;
}

RunConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return {};
  return parse_run_config(read_json_file(path), fs::path(path).parent_path());
}

std::vector<ComplexityRow> plan_rows(const SessionPlan& plan) {
  std::vector<ComplexityRow> rows;
  auto push = [&](const TaskInstance& inst) {
    rows.push_back({inst.id, inst.task, inst.u, inst.v, inst.answer, inst.score});
  };
  push(plan.control_cn);
  push(plan.control_sp);
  for (const auto& series : plan.cn_series)
    for (const TaskInstance& inst : series) push(inst);
  for (const auto& series : plan.sp_series)
    for (const TaskInstance& inst : series) push(inst);
  return rows;
}

// Paired analysis of two group types over a plan's responses: the control
// instance and the first instance of each task series are discarded, the
// rest are matched by instance within each pairing.
Json build_report(const SessionPlan& plan, const std::vector<SessionRecord>& records,
                  const std::string& group_a, const std::string& group_b,
                  std::uint64_t seed, int replicates) {
  GroupType ga = parse_group_type(group_a);
  GroupType gb = parse_group_type(group_b);
  if (ga == gb) throw std::invalid_argument("the compared groups must differ");
  auto answer_key = plan_answer_key(plan);

  std::map<std::string, const PlanUnit*> plan_units;
  for (const PlanUnit& u : plan.units)
    plan_units["u" + std::to_string(u.unit)] = &u;

  struct UnitData {
    const PlanUnit* unit = nullptr;
    GroupType type = GroupType::Individual;
    std::vector<std::string> kept_order;
    std::map<std::string, HarmonizedResponse> by_id;
  };
  std::map<int, std::vector<UnitData>> by_pairing;

  const int ipt = plan.config.instances_per_task;
  for (const SessionRecord& rec : records) {
    auto it = plan_units.find(rec.unit_id);
    if (it == plan_units.end())
      throw std::invalid_argument("responses name unit " + rec.unit_id +
                                  " which is not in the plan");
    UnitData data;
    data.unit = it->second;
    data.type = rec.group_type;
    std::vector<TaskInstance> seq = answer_sequence(plan, *it->second);
    const std::set<size_t> discard = {0, 1, static_cast<size_t>(1 + ipt)};
    for (size_t i = 0; i < seq.size(); ++i)
      if (!discard.count(i)) data.kept_order.push_back(seq[i].id);
    std::set<std::string> kept(data.kept_order.begin(), data.kept_order.end());
    for (const HarmonizedResponse& h : harmonize(rec, answer_key))
      if (kept.count(h.instance_id)) data.by_id[h.instance_id] = h;
    by_pairing[it->second->pairing].push_back(std::move(data));
  }

  PairedSeries acc, log_time;
  std::vector<int> measures_per_pairing;
  for (const auto& [pairing, units] : by_pairing) {
    const UnitData* a = nullptr;
    const UnitData* b = nullptr;
    for (const UnitData& u : units) {
      if (u.type == ga && !a) a = &u;
      if (u.type == gb && !b) b = &u;
    }
    if (!a || !b) continue;
    std::vector<std::pair<double, double>> acc_pairs, time_pairs;
    for (const std::string& id : a->kept_order) {
      auto ia = a->by_id.find(id);
      auto ib = b->by_id.find(id);
      if (ia == a->by_id.end() || ib == b->by_id.end()) continue;
      acc_pairs.push_back({ia->second.accuracy, ib->second.accuracy});
      time_pairs.push_back({std::log(ia->second.time_s), std::log(ib->second.time_s)});
    }
    if (acc_pairs.empty()) continue;
    measures_per_pairing.push_back(static_cast<int>(acc_pairs.size()));
    acc.units.push_back(std::move(acc_pairs));
    log_time.units.push_back(std::move(time_pairs));
  }
  if (acc.units.size() < 2)
    throw std::runtime_error(
        "need at least 2 pairings where both compared group types responded; found " +
        std::to_string(acc.units.size()));

  BootstrapResult acc_boot = stratified_bootstrap(acc, replicates, derive_seed(seed, 1));
  PermutationResult acc_perm =
      paired_permutation_test(acc, replicates, derive_seed(seed, 2));
  BootstrapResult time_boot =
      stratified_bootstrap(log_time, replicates, derive_seed(seed, 3));
  PermutationResult time_perm =
      paired_permutation_test(log_time, replicates, derive_seed(seed, 4));

  Json report;
  report["format"] = "graphtic-report";
  report["version"] = 1;
  report["seed"] = seed;
  report["replicates"] = replicates;
  report["group_a"] = group_a;
  report["group_b"] = group_b;
  report["pairings_used"] = static_cast<int>(acc.units.size());
  report["measures_per_pairing"] = measures_per_pairing;
  report["metrics"] = {
      {"accuracy",
       {{"mean_diff", acc_boot.mean_diff},
        {"ci_low", acc_boot.ci_low},
        {"ci_high", acc_boot.ci_high},
        {"p_value", acc_perm.p_value}}},
      {"log_time",
       {{"mean_diff", time_boot.mean_diff},
        {"ci_low", time_boot.ci_low},
        {"ci_high", time_boot.ci_high},
        {"p_value", time_perm.p_value},
        {"time_ratio", std::exp(time_boot.mean_diff)},
        {"time_ratio_ci",
         Json::array({std::exp(time_boot.ci_low), std::exp(time_boot.ci_high)})}}}};
  report["method"] = {
      {"statistic", "mean over units of the unit mean difference, group b minus group a"},
      {"stratification", "units resampled with replacement, then measures within each"},
      {"ci", "percentile, 2.5 and 97.5"},
      {"test", "two-sided paired permutation via unit-level sign flips"},
      {"discard", "control instance and the first instance of each task series"},
      {"time_transform", "natural log of seconds"},
      {"alpha", 0.05}};
  return report;
}

// Collects every write so the manifest can list the hashes of exactly what
// landed on disk.
struct OutputSink {
  fs::path dir;
  std::map<std::string, std::string> hashes;  // relative path -> fnv1a64 hex

  void emit(const std::string& rel, const std::string& content) {
    write_text_file((dir / rel).string(), content);
    hashes[rel] = hex64(fnv1a64(content));
  }
};

int cmd_pipeline(const std::string& config_path, std::uint64_t seed,
                 const std::string& out_dir, const ScoringFlags& scoring,
                 const RadiusFlags& radii) {
  auto stage = [](const char* name, auto&& fn) {
    try {
      fn();
    } catch (const FileNotFound& e) {
      throw CliFailure(2, std::string("stage ") + name + ": " + e.what());
    } catch (const CliFailure&) {
      throw;
    } catch (const std::exception& e) {
      throw CliFailure(1, std::string("stage ") + name + ": " + e.what());
    }
  };

  OutputSink sink{fs::path(out_dir), {}};
  RunConfig cfg;
  std::string config_text;

  stage("config", [&] {
    config_text = read_text_file(config_path);
    Json doc;
    try {
      doc = Json::parse(config_text);
    } catch (const std::exception& e) {
      throw std::invalid_argument(config_path + ": " + std::string(e.what()));
    }
    cfg = parse_run_config(doc, fs::path(config_path).parent_path());
    if (cfg.graph_paths.empty())
      throw std::invalid_argument("config lists no graphs");
    scoring.apply(cfg.session.scoring);
    radii.apply(cfg.node_radius, cfg.edge_radius);
  });

  std::vector<Graph> graphs;
  stage("ingest", [&] {
    for (size_t i = 0; i < cfg.graph_paths.size(); ++i) {
      EdgeListResult in = load_graph_file(cfg.graph_paths[i]);
      std::string base = "g" + std::to_string(i);
      sink.emit(base + ".json", dump(graph_to_json(in.graph)));
      if (!in.original_ids.empty()) {
        Json mapping;
        mapping["format"] = "graphtic-mapping";
        mapping["source"] = fs::path(cfg.graph_paths[i]).filename().string();
        mapping["ids"] = in.original_ids;  // dense id -> original token
        sink.emit(base + ".mapping.json", dump(mapping));
      }
      graphs.push_back(std::move(in.graph));
    }
  });

  std::vector<Layout3D> layouts(graphs.size());
  stage("layout", [&] {
    std::vector<std::future<StressResult>> jobs;
    for (size_t i = 0; i < graphs.size(); ++i)
      jobs.push_back(std::async(std::launch::async, [&, i] {
        return stress_layout(graphs[i], derive_seed(seed, 0x4C01 + i), cfg.stress);
      }));
    for (size_t i = 0; i < graphs.size(); ++i) {
      StressResult res = jobs[i].get();
      res.layout.node_radius = cfg.node_radius;
      res.layout.edge_radius = cfg.edge_radius;
      normalize_to_view(res.layout, cfg.view.cube_side, cfg.view.barycenter_height);
      sink.emit("g" + std::to_string(i) + ".layout.json",
                dump(layout_to_json(res.layout, res.stats)));
      layouts[i] = std::move(res.layout);
    }
  });

  SessionPlan plan;
  std::vector<ComplexityRow> rows;
  stage("plan", [&] {
    plan = sample_plan(graphs, layouts, cfg.session, seed);
    sink.emit("plan.json", dump(plan_to_json(plan)));
    rows = plan_rows(plan);
    sink.emit("complexity.csv", complexity_csv(rows, seed, cfg.session.scoring));
  });

  std::vector<SessionRecord> records;
  const std::uint64_t sim_seed = derive_seed(seed, 0x51D);
  stage("simulate", [&] {
    records = simulate_responses(plan, sim_seed, cfg.sim);
    sink.emit("responses.csv", responses_csv(records));
  });

  const std::uint64_t eval_seed = derive_seed(seed, 0xE7A1);
  stage("evaluate", [&] {
    Json report = build_report(plan, records, cfg.group_a, cfg.group_b, eval_seed,
                               cfg.replicates);
    sink.emit("report.json", dump(report));
  });

  stage("scene", [&] {
    for (const TaskInstance* control : {&plan.control_cn, &plan.control_sp}) {
      Scene scene = make_scene(graphs[control->graph_id], layouts[control->graph_id],
                               control->u, control->v, cfg.style, cfg.view);
      sink.emit(std::string("scene_") + task_name(control->task) + ".json",
                dump(scene_to_json(scene)));
    }
  });

  stage("plot", [&] { sink.emit("plot.svg", render_plot_svg(rows, records)); });

  stage("manifest", [&] {
    Json manifest;
    manifest["format"] = "graphtic-manifest";
    manifest["version"] = 1;
    manifest["seed"] = seed;
    manifest["config_hash"] = hex64(fnv1a64(config_text));
    Json seeds;
    Json layout_seeds;
    for (size_t i = 0; i < graphs.size(); ++i)
      layout_seeds["g" + std::to_string(i)] = derive_seed(seed, 0x4C01 + i);
    seeds["layout"] = std::move(layout_seeds);
    seeds["plan"] = seed;
    seeds["simulation"] = sim_seed;
    seeds["evaluate"] = eval_seed;
    manifest["seeds"] = std::move(seeds);
    Json outputs;
    for (const auto& [rel, hash] : sink.hashes) outputs[rel] = hash;
    manifest["outputs"] = std::move(outputs);
    manifest["decisions"] = Json::array({
        "ideal edge length defaults to cube side over graph diameter",
        "layouts are normalized into the viewing cube with the barycenter at eye height",
        "node measure in noise regions defaults to the ball diameter; edges default to full length",
        "distortion defaults to absolute meters; relative mode divides by the endpoint distance",
        "combined complexity is signal plus the natural log of noise, undefined at zero noise",
        "controls are the lowest-stratum candidates with minimal combined complexity, their graphs reserved",
        "paired units see identical series in opposite task order, so task order is exactly counterbalanced",
        "path betweenness averages the interior centralities of the lexicographically first shortest path",
        "outliers are candidates two sample standard deviations from their graph's mean on any controlled property",
        "evaluation discards the control instance and the first instance of each task series",
        "bootstrap resamples units, then measures within each resampled unit; percentile intervals",
        "completion times are compared on the natural log scale",
    });
    sink.emit("manifest.json", dump(manifest));
  });

  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"task-instance complexity measures and experiment pipeline for "
               "3-D graph layouts"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "graphtic 1.0.0");

  // Shared option storage; only the chosen subcommand's values are read.
  std::uint64_t seed = 0;
  std::string config_path, out_path;
  std::string graph_path, layout_path, plan_path, responses_path, complexity_path;
  std::string graphs_dir, layouts_dir;
  std::string group_a = "individual", group_b = "ad_hoc_pair";
  int graph_id = 0;
  int replicates = 10000;
  int path_cap = 64;
  NodeId sel_u = 0, sel_v = 0;

  auto add_seed = [&](CLI::App* sub) {
    return sub->add_option("--seed", seed, "master random seed")
        ->envname("GRAPHTIC_SEED");
  };
  auto add_config = [&](CLI::App* sub, bool required) {
    CLI::Option* o = sub->add_option("--config", config_path, "configuration file (JSON)")
                         ->envname("GRAPHTIC_CONFIG");
    if (required) o->required();
    return o;
  };
  auto add_out = [&](CLI::App* sub, const char* what) {
    return sub->add_option("--out", out_path, what)->envname("GRAPHTIC_OUT")->required();
  };

  int rc = 0;
  auto guard = [&rc](auto&& fn) {
    return [&rc, fn]() {
      try {
        fn();
      } catch (const CliFailure& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = e.code;
      } catch (const FileNotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 2;
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 1;
      }
    };
  };

  // layout
  auto* layout_cmd = app.add_subcommand(
      "layout", "compute a stress-minimized 3-D layout for one graph");
  layout_cmd->add_option("--graph", graph_path, "graph file (JSON or edge list)")
      ->required();
  add_seed(layout_cmd);
  add_config(layout_cmd, false);
  add_out(layout_cmd, "layout file to write (JSON)");
  RadiusFlags layout_radii;
  layout_radii.add(layout_cmd);
  layout_cmd->callback(guard([&] {
    RunConfig cfg = load_config_or_default(config_path);
    layout_radii.apply(cfg.node_radius, cfg.edge_radius);
    Graph g = load_graph_file(graph_path).graph;
    StressResult res = stress_layout(g, seed, cfg.stress);
    res.layout.node_radius = cfg.node_radius;
    res.layout.edge_radius = cfg.edge_radius;
    normalize_to_view(res.layout, cfg.view.cube_side, cfg.view.barycenter_height);
    write_text_file(out_path, dump(layout_to_json(res.layout, res.stats)));
  }));

  // candidates
  auto* cand_cmd = app.add_subcommand(
      "candidates", "enumerate and outlier-filter task candidates for one graph");
  cand_cmd->add_option("--graph", graph_path, "graph file (JSON or edge list)")
      ->required();
  cand_cmd->add_option("--layout", layout_path, "layout file (JSON)")->required();
  cand_cmd->add_option("--path-cap", path_cap,
                       "drop shortest-path pairs with more paths than this");
  add_out(cand_cmd, "candidate report to write (JSON)");
  cand_cmd->callback(guard([&] {
    Graph g = load_graph_file(graph_path).graph;
    Layout3D layout = load_layout_file(layout_path);
    Json doc;
    doc["format"] = "graphtic-candidates";
    doc["version"] = 1;
    Json tasks;
    for (TaskKind task : {TaskKind::CommonNeighbors, TaskKind::ShortestPath}) {
      auto cands = enumerate_candidates(g, layout, task, path_cap);
      Json block;
      if (cands.size() < 3) {
        block["kept"] = Json::array();
        block["removed"] = Json::array();
        block["skipped_properties"] = Json::array();
        block["note"] = "fewer than 3 candidates; outlier filter not applied";
        for (const NodePairCandidate& c : cands)
          block["kept"].push_back({{"u", c.u},
                                   {"v", c.v},
                                   {"answer", c.answer},
                                   {"props", props_json(c.props)}});
      } else {
        OutlierFilter filtered = filter_outliers(cands);
        auto emit = [&](const std::vector<NodePairCandidate>& list) {
          Json arr = Json::array();
          for (const NodePairCandidate& c : list)
            arr.push_back({{"u", c.u},
                           {"v", c.v},
                           {"answer", c.answer},
                           {"props", props_json(c.props)}});
          return arr;
        };
        block["kept"] = emit(filtered.kept);
        block["removed"] = emit(filtered.removed);
        block["skipped_properties"] = filtered.skipped;
      }
      tasks[task_name(task)] = std::move(block);
    }
    doc["tasks"] = std::move(tasks);
    write_text_file(out_path, dump(doc));
  }));

  // complexity
  auto* cx_cmd = app.add_subcommand(
      "complexity", "score every filtered candidate pair of one graph");
  cx_cmd->add_option("--graph", graph_path, "graph file (JSON or edge list)")
      ->required();
  cx_cmd->add_option("--layout", layout_path, "layout file (JSON)")->required();
  cx_cmd->add_option("--graph-id", graph_id, "graph index used in instance ids");
  add_seed(cx_cmd);
  add_config(cx_cmd, false);
  add_out(cx_cmd, "complexity table to write (CSV)");
  ScoringFlags cx_scoring;
  cx_scoring.add(cx_cmd);
  cx_cmd->callback(guard([&] {
    RunConfig cfg = load_config_or_default(config_path);
    ComplexityParams params = cfg.session.scoring;
    cx_scoring.apply(params);
    Graph g = load_graph_file(graph_path).graph;
    Layout3D layout = load_layout_file(layout_path);
    std::vector<ComplexityRow> rows;
    for (TaskKind task : {TaskKind::CommonNeighbors, TaskKind::ShortestPath}) {
      auto cands = enumerate_candidates(g, layout, task, params.path_cap);
      std::vector<NodePairCandidate> kept;
      if (cands.size() < 3)
        kept = std::move(cands);
      else
        kept = filter_outliers(cands).kept;
      for (const NodePairCandidate& c : kept)
        rows.push_back({instance_id(graph_id, task, c.u, c.v), task, c.u, c.v, c.answer,
                        score_instance(g, layout, task, c.u, c.v, params)});
    }
    write_text_file(out_path, complexity_csv(rows, seed, params));
  }));

  // plan
  auto* plan_cmd = app.add_subcommand(
      "plan", "sample a counterbalanced session plan from a laid-out corpus");
  plan_cmd->add_option("--graphs", graphs_dir, "directory holding g<i>.json graphs")
      ->required();
  plan_cmd
      ->add_option("--layouts", layouts_dir, "directory holding g<i>.layout.json layouts")
      ->required();
  add_seed(plan_cmd);
  add_config(plan_cmd, false);
  add_out(plan_cmd, "plan file to write (JSON); a CSV summary lands beside it");
  ScoringFlags plan_scoring;
  plan_scoring.add(plan_cmd);
  plan_cmd->callback(guard([&] {
    RunConfig cfg = load_config_or_default(config_path);
    plan_scoring.apply(cfg.session.scoring);
    std::vector<Graph> graphs;
    std::vector<Layout3D> layouts;
    for (int i = 0;; ++i) {
      fs::path gp = fs::path(graphs_dir) / ("g" + std::to_string(i) + ".json");
      if (!fs::exists(gp)) break;
      graphs.push_back(graph_from_json(read_json_file(gp.string())));
      fs::path lp = fs::path(layouts_dir) / ("g" + std::to_string(i) + ".layout.json");
      layouts.push_back(load_layout_file(lp.string()));
    }
    if (graphs.empty())
      throw FileNotFound((fs::path(graphs_dir) / "g0.json").string());
    SessionPlan plan = sample_plan(graphs, layouts, cfg.session, seed);
    write_text_file(out_path, dump(plan_to_json(plan)));
    fs::path csv_path = fs::path(out_path).replace_extension(".csv");
    write_text_file(csv_path.string(),
                    complexity_csv(plan_rows(plan), seed, cfg.session.scoring));
  }));

  // evaluate
  auto* eval_cmd = app.add_subcommand(
      "evaluate", "paired bootstrap and permutation analysis of responses");
  eval_cmd->add_option("--plan", plan_path, "plan file (JSON)")->required();
  eval_cmd->add_option("--responses", responses_path, "response table (CSV)")
      ->required();
  eval_cmd->add_option("--group-a", group_a, "baseline group type");
  eval_cmd->add_option("--group-b", group_b, "comparison group type");
  eval_cmd->add_option("--replicates", replicates, "bootstrap/permutation replicates")
      ->check(CLI::Range(1000, 1000000));
  add_seed(eval_cmd);
  add_out(eval_cmd, "report to write (JSON)");
  eval_cmd->callback(guard([&] {
    SessionPlan plan = plan_from_json(read_json_file(plan_path));
    std::vector<SessionRecord> records = parse_responses_csv(read_text_file(responses_path));
    Json report = build_report(plan, records, group_a, group_b, seed, replicates);
    write_text_file(out_path, dump(report));
  }));

  // scene
  auto* scene_cmd = app.add_subcommand(
      "scene", "export a renderable scene with two selected nodes");
  scene_cmd->add_option("--graph", graph_path, "graph file (JSON or edge list)")
      ->required();
  scene_cmd->add_option("--layout", layout_path, "layout file (JSON)")->required();
  scene_cmd->add_option("--u", sel_u, "first selected node id")->required();
  scene_cmd->add_option("--v", sel_v, "second selected node id")->required();
  add_config(scene_cmd, false);
  add_out(scene_cmd, "scene file to write (JSON)");
  scene_cmd->callback(guard([&] {
    RunConfig cfg = load_config_or_default(config_path);
    Graph g = load_graph_file(graph_path).graph;
    Layout3D layout = load_layout_file(layout_path);
    Scene scene = make_scene(std::move(g), std::move(layout), sel_u, sel_v, cfg.style,
                             cfg.view);
    write_text_file(out_path, dump(scene_to_json(scene)));
  }));

  // plot
  auto* plot_cmd = app.add_subcommand(
      "plot", "scatter responses against signal and noise complexity");
  plot_cmd->add_option("--complexity", complexity_path, "complexity table (CSV)")
      ->required();
  plot_cmd->add_option("--responses", responses_path, "response table (CSV)")
      ->required();
  add_out(plot_cmd, "plot to write (SVG)");
  plot_cmd->callback(guard([&] {
    auto rows = parse_complexity_csv(read_text_file(complexity_path));
    auto records = parse_responses_csv(read_text_file(responses_path));
    write_text_file(out_path, render_plot_svg(rows, records));
  }));

  // pipeline
  auto* pipe_cmd = app.add_subcommand(
      "pipeline", "run ingest, layout, plan, simulate, evaluate, scene and plot");
  add_config(pipe_cmd, true);
  add_seed(pipe_cmd);
  add_out(pipe_cmd, "output directory");
  ScoringFlags pipe_scoring;
  pipe_scoring.add(pipe_cmd);
  RadiusFlags pipe_radii;
  pipe_radii.add(pipe_cmd);
  pipe_cmd->callback(guard(
      [&] { rc = cmd_pipeline(config_path, seed, out_path, pipe_scoring, pipe_radii); }));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  return rc;
}

}  // namespace graphtic

#include "graphtic/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <system_error>

namespace graphtic {

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t value) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[value & 0xF];
    value >>= 4;
  }
  return out;
}

std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(p.parent_path(), ec);
    if (ec)
      throw std::runtime_error("cannot create directory " + p.parent_path().string() +
                               ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

EdgeListResult parse_edge_list(const std::string& text) {
  EdgeListResult out;
  std::map<std::string, NodeId> ids;
  std::vector<std::pair<NodeId, NodeId>> edges;

  auto intern = [&](const std::string& token) {
    auto [it, fresh] = ids.emplace(token, static_cast<NodeId>(out.original_ids.size()));
    if (fresh) out.original_ids.push_back(token);
    return it->second;
  };

  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;  // blank or comment-only line
    if (!(fields >> b) || fields >> extra)
      throw std::invalid_argument("edge list line " + std::to_string(line_no) +
                                  ": expected exactly two node ids");
    edges.emplace_back(intern(a), intern(b));
  }

  out.graph = Graph::build(static_cast<int>(out.original_ids.size()), std::move(edges),
                           out.original_ids);
  return out;
}

EdgeListResult load_edge_list(const std::string& path) {
  return parse_edge_list(read_text_file(path));
}

Json graph_to_json(const Graph& g) {
  Json doc;
  doc["nodes"] = g.labels();
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back(Json::array({a, b}));
  doc["edges"] = std::move(edges);
  return doc;
}

Graph graph_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("edges"))
    throw std::invalid_argument("graph document needs `nodes` and `edges`");
  std::vector<std::string> labels;
  for (const Json& node : doc.at("nodes"))
    labels.push_back(node.is_string() ? node.get<std::string>() : node.dump());
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (const Json& e : doc.at("edges")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("each edge must be a two-element array");
    edges.emplace_back(e[0].get<NodeId>(), e[1].get<NodeId>());
  }
  return Graph::build(static_cast<int>(labels.size()), std::move(edges),
                      std::move(labels));
}

namespace {

Json vec3_to_json(const Vec3& v) { return Json::array({v.x, v.y, v.z}); }

Vec3 vec3_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3)
    throw std::invalid_argument("expected a three-element coordinate array");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

Json layout_to_json(const Layout3D& layout, const LayoutStats& stats) {
  Json meta;
  meta["seed"] = stats.seed;
  meta["stress"] = stats.stress;
  meta["iterations"] = stats.iterations;
  meta["ideal_edge_length"] = stats.ideal_edge_length;
  meta["node_radius"] = layout.node_radius;
  meta["edge_radius"] = layout.edge_radius;
  meta["bounds"] = {{"lo", vec3_to_json(layout.bounds.lo)},
                    {"hi", vec3_to_json(layout.bounds.hi)}};
  Json doc;
  doc["meta"] = std::move(meta);
  Json positions = Json::array();
  for (const Vec3& p : layout.positions) positions.push_back(vec3_to_json(p));
  doc["positions"] = std::move(positions);
  return doc;
}

std::pair<Layout3D, LayoutStats> layout_from_json(const Json& doc) {
  if (!doc.is_object() || !doc.contains("meta") || !doc.contains("positions"))
    throw std::invalid_argument("layout document needs `meta` and `positions`");
  const Json& meta = doc.at("meta");
  LayoutStats stats;
  stats.seed = meta.at("seed").get<std::uint64_t>();
  stats.stress = meta.at("stress").get<double>();
  stats.iterations = meta.at("iterations").get<int>();
  stats.ideal_edge_length = meta.at("ideal_edge_length").get<double>();

  Layout3D layout;
  layout.node_radius = meta.at("node_radius").get<double>();
  layout.edge_radius = meta.at("edge_radius").get<double>();
  layout.bounds = {vec3_from_json(meta.at("bounds").at("lo")),
                   vec3_from_json(meta.at("bounds").at("hi"))};
  for (const Json& p : doc.at("positions")) layout.positions.push_back(vec3_from_json(p));
  return {std::move(layout), stats};
}

namespace {

Json score_to_json(const ComplexityScore& s) {
  Json j;
  j["signal"] = s.signal;
  j["noise"] = s.noise;
  if (s.combined)
    j["combined"] = *s.combined;
  else
    j["combined"] = nullptr;
  return j;
}

ComplexityScore score_from_json(const Json& j) {
  ComplexityScore s;
  s.signal = j.at("signal").get<double>();
  s.noise = j.at("noise").get<double>();
  if (!j.at("combined").is_null()) s.combined = j.at("combined").get<double>();
  return s;
}

Json props_to_json(const LocalProperties& p) {
  Json j;
  j["local_density"] = p.local_density;
  j["local_clustering"] = p.local_clustering;
  j["degree_centrality"] = p.degree_centrality;
  j["path_betweenness"] = p.path_betweenness;
  j["euclidean_node_distance"] = p.euclidean_node_distance;
  j["fill_ratio"] = p.fill_ratio;
  return j;
}

LocalProperties props_from_json(const Json& j) {
  LocalProperties p;
  p.local_density = j.at("local_density").get<double>();
  p.local_clustering = j.at("local_clustering").get<double>();
  p.degree_centrality = j.at("degree_centrality").get<double>();
  p.path_betweenness = j.at("path_betweenness").get<double>();
  p.euclidean_node_distance = j.at("euclidean_node_distance").get<double>();
  p.fill_ratio = j.at("fill_ratio").get<double>();
  return p;
}

Json instance_to_json(const TaskInstance& inst) {
  Json j;
  j["id"] = inst.id;
  j["graph_id"] = inst.graph_id;
  j["task"] = task_name(inst.task);
  j["u"] = inst.u;
  j["v"] = inst.v;
  j["answer"] = inst.answer;
  j["score"] = score_to_json(inst.score);
  j["props"] = props_to_json(inst.props);
  return j;
}

TaskInstance instance_from_json(const Json& j) {
  TaskInstance inst;
  inst.id = j.at("id").get<std::string>();
  inst.graph_id = j.at("graph_id").get<int>();
  inst.task = parse_task(j.at("task").get<std::string>());
  inst.u = j.at("u").get<NodeId>();
  inst.v = j.at("v").get<NodeId>();
  inst.answer = j.at("answer").get<int>();
  inst.score = score_from_json(j.at("score"));
  inst.props = props_from_json(j.at("props"));
  return inst;
}

Json config_to_json(const SessionConfig& c) {
  Json scoring;
  scoring["mu_node_mode"] = mu_node_mode_name(c.scoring.mu_node);
  scoring["edge_noise_mode"] = edge_noise_mode_name(c.scoring.edge_noise);
  scoring["task2_mode"] = task2_mode_name(c.scoring.task2_mode);
  scoring["path_cap"] = c.scoring.path_cap;
  scoring["node_probe_margin"] = c.scoring.node_probe_margin;
  scoring["mvee"] = {{"eps", c.scoring.mvee.eps},
                     {"max_iter", c.scoring.mvee.max_iter},
                     {"min_thickness", c.scoring.mvee.min_thickness}};
  Json j;
  j["instances_per_task"] = c.instances_per_task;
  j["pairings"] = c.pairings;
  j["cn_answer_min"] = c.cn_answer_min;
  j["cn_answer_max"] = c.cn_answer_max;
  j["sp_answer_min"] = c.sp_answer_min;
  j["sp_answer_max"] = c.sp_answer_max;
  j["density_min"] = c.density_min;
  j["density_max"] = c.density_max;
  j["scoring"] = std::move(scoring);
  return j;
}

SessionConfig config_from_json(const Json& j) {
  SessionConfig c;
  c.instances_per_task = j.at("instances_per_task").get<int>();
  c.pairings = j.at("pairings").get<int>();
  c.cn_answer_min = j.at("cn_answer_min").get<int>();
  c.cn_answer_max = j.at("cn_answer_max").get<int>();
  c.sp_answer_min = j.at("sp_answer_min").get<int>();
  c.sp_answer_max = j.at("sp_answer_max").get<int>();
  c.density_min = j.at("density_min").get<double>();
  c.density_max = j.at("density_max").get<double>();
  const Json& scoring = j.at("scoring");
  c.scoring.mu_node = parse_mu_node_mode(scoring.at("mu_node_mode").get<std::string>());
  c.scoring.edge_noise =
      parse_edge_noise_mode(scoring.at("edge_noise_mode").get<std::string>());
  c.scoring.task2_mode = parse_task2_mode(scoring.at("task2_mode").get<std::string>());
  c.scoring.path_cap = scoring.at("path_cap").get<int>();
  c.scoring.node_probe_margin = scoring.at("node_probe_margin").get<double>();
  c.scoring.mvee.eps = scoring.at("mvee").at("eps").get<double>();
  c.scoring.mvee.max_iter = scoring.at("mvee").at("max_iter").get<int>();
  c.scoring.mvee.min_thickness = scoring.at("mvee").at("min_thickness").get<double>();
  return c;
}

Json series_to_json(const std::vector<std::vector<TaskInstance>>& series) {
  Json j = Json::array();
  for (const auto& list : series) {
    Json inner = Json::array();
    for (const TaskInstance& inst : list) inner.push_back(instance_to_json(inst));
    j.push_back(std::move(inner));
  }
  return j;
}

std::vector<std::vector<TaskInstance>> series_from_json(const Json& j) {
  std::vector<std::vector<TaskInstance>> out;
  for (const Json& inner : j) {
    std::vector<TaskInstance> list;
    for (const Json& inst : inner) list.push_back(instance_from_json(inst));
    out.push_back(std::move(list));
  }
  return out;
}

}  // namespace

Json plan_to_json(const SessionPlan& plan) {
  Json config = config_to_json(plan.config);
  Json doc;
  doc["format"] = "graphtic-plan";
  doc["version"] = 1;
  doc["seed"] = plan.seed;
  doc["config_hash"] = hex64(fnv1a64(config.dump()));
  doc["config"] = std::move(config);
  doc["graphs_used"] = plan.graphs_used;
  doc["graphs_rejected"] = plan.graphs_rejected;
  doc["control_cn"] = instance_to_json(plan.control_cn);
  doc["control_sp"] = instance_to_json(plan.control_sp);
  doc["cn_series"] = series_to_json(plan.cn_series);
  doc["sp_series"] = series_to_json(plan.sp_series);
  Json units = Json::array();
  for (const PlanUnit& u : plan.units)
    units.push_back({{"unit", u.unit},
                     {"pairing", u.pairing},
                     {"first_task", task_name(u.first_task)}});
  doc["units"] = std::move(units);
  doc["notes"] = plan.notes;
  return doc;
}

SessionPlan plan_from_json(const Json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "graphtic-plan")
    throw std::invalid_argument("not a graphtic-plan document");
  SessionPlan plan;
  plan.seed = doc.at("seed").get<std::uint64_t>();
  plan.config = config_from_json(doc.at("config"));
  plan.graphs_used = doc.at("graphs_used").get<std::vector<int>>();
  plan.graphs_rejected = doc.at("graphs_rejected").get<std::vector<int>>();
  plan.control_cn = instance_from_json(doc.at("control_cn"));
  plan.control_sp = instance_from_json(doc.at("control_sp"));
  plan.cn_series = series_from_json(doc.at("cn_series"));
  plan.sp_series = series_from_json(doc.at("sp_series"));
  for (const Json& u : doc.at("units"))
    plan.units.push_back({u.at("unit").get<int>(), u.at("pairing").get<int>(),
                          parse_task(u.at("first_task").get<std::string>())});
  plan.notes = doc.at("notes").get<std::vector<std::string>>();
  return plan;
}

std::string complexity_csv(const std::vector<ComplexityRow>& rows, std::uint64_t seed,
                           const ComplexityParams& params) {
  std::string out =
      "instance_id,task,u,v,answer,signal,noise,combined,seed,mu_node_mode,clip_mode\n";
  const std::string provenance = "," + std::to_string(seed) + "," +
                                 mu_node_mode_name(params.mu_node) + "," +
                                 edge_noise_mode_name(params.edge_noise) + "\n";
  for (const ComplexityRow& r : rows) {
    out += r.instance_id;
    out += ",";
    out += task_name(r.task);
    out += "," + std::to_string(r.u) + "," + std::to_string(r.v) + "," +
           std::to_string(r.answer) + "," + format_double(r.score.signal) + "," +
           format_double(r.score.noise) + ",";
    if (r.score.combined) out += format_double(*r.score.combined);
    out += provenance;
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

double parse_number(const std::string& text, const std::string& what, int line_no) {
  try {
    size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad " + what +
                                " value `" + text + "`");
  }
}

int parse_int(const std::string& text, const std::string& what, int line_no) {
  int value = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size())
    throw std::invalid_argument("line " + std::to_string(line_no) + ": bad " + what +
                                " value `" + text + "`");
  return value;
}

}  // namespace

std::vector<ComplexityRow> parse_complexity_csv(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line))
    throw std::invalid_argument("complexity table is empty");
  auto header = split_csv_line(line);
  if (header.size() < 8 || header[0] != "instance_id" || header[5] != "signal" ||
      header[6] != "noise" || header[7] != "combined")
    throw std::invalid_argument("unrecognized complexity table header");

  std::vector<ComplexityRow> rows;
  int line_no = 1;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": field count differs from header");
    ComplexityRow r;
    r.instance_id = fields[0];
    r.task = parse_task(fields[1]);
    r.u = parse_int(fields[2], "node id", line_no);
    r.v = parse_int(fields[3], "node id", line_no);
    r.answer = parse_int(fields[4], "answer", line_no);
    r.score.signal = parse_number(fields[5], "signal", line_no);
    r.score.noise = parse_number(fields[6], "noise", line_no);
    if (!fields[7].empty())
      r.score.combined = parse_number(fields[7], "combined", line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string responses_csv(const std::vector<SessionRecord>& records) {
  std::string out = "unit_id,group_type,instance_id,member,answer,time_s\n";
  for (const SessionRecord& rec : records)
    for (const InstanceResponse& r : rec.responses)
      for (size_t m = 0; m < r.members.size(); ++m) {
        out += rec.unit_id;
        out += ",";
        out += group_type_name(rec.group_type);
        out += ",";
        out += r.instance_id;
        out += "," + std::to_string(m) + "," + std::to_string(r.members[m].answer) +
               "," + format_double(r.members[m].time_s) + "\n";
      }
  return out;
}

std::vector<SessionRecord> parse_responses_csv(const std::string& text) {
  std::istringstream lines(text);
  std::string line;
  if (!std::getline(lines, line)) throw std::invalid_argument("response table is empty");
  auto header = split_csv_line(line);
  const std::vector<std::string> expected = {"unit_id",     "group_type", "instance_id",
                                             "member",      "answer",     "time_s"};
  if (std::vector<std::string>(header.begin(), header.end()) != expected)
    throw std::invalid_argument(
        "response table header must be unit_id,group_type,instance_id,member,answer,time_s");

  std::vector<SessionRecord> records;
  std::set<std::string> finished_units;
  int line_no = 1;
  while (std::getline(lines, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 6)
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": expected 6 fields");
    const std::string& unit = fields[0];
    GroupType type = parse_group_type(fields[1]);
    const std::string& instance = fields[2];
    int member = parse_int(fields[3], "member", line_no);
    int answer = parse_int(fields[4], "answer", line_no);
    double time_s = parse_number(fields[5], "time_s", line_no);

    if (records.empty() || records.back().unit_id != unit) {
      if (!records.empty()) finished_units.insert(records.back().unit_id);
      if (finished_units.count(unit))
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": rows for unit " + unit + " must be contiguous");
      records.push_back({unit, type, {}});
    }
    SessionRecord& rec = records.back();
    if (rec.group_type != type)
      throw std::invalid_argument("line " + std::to_string(line_no) + ": unit " + unit +
                                  " changes group type mid-file");
    if (rec.responses.empty() || rec.responses.back().instance_id != instance) {
      if (member != 0)
        throw std::invalid_argument("line " + std::to_string(line_no) +
                                    ": member indices must start at 0");
      rec.responses.push_back({instance, {}});
    }
    InstanceResponse& resp = rec.responses.back();
    if (member != static_cast<int>(resp.members.size()))
      throw std::invalid_argument("line " + std::to_string(line_no) +
                                  ": member indices must be consecutive from 0");
    resp.members.push_back({answer, time_s});
  }
  return records;
}

}  // namespace graphtic

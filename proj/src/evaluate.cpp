#include "graphtic/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphtic/rng.hpp"

namespace graphtic {

const char* group_type_name(GroupType type) {
  switch (type) {
    case GroupType::Individual: return "individual";
    case GroupType::AdHocPair: return "ad_hoc_pair";
    case GroupType::NominalPair: return "nominal_pair";
  }
  throw std::invalid_argument("unknown group type");
}

GroupType parse_group_type(const std::string& name) {
  if (name == "individual") return GroupType::Individual;
  if (name == "ad_hoc_pair") return GroupType::AdHocPair;
  if (name == "nominal_pair") return GroupType::NominalPair;
  throw std::invalid_argument("unknown group type: " + name);
}

double accuracy(int a_correct, int a_actual) {
  if (a_correct <= 0) throw std::invalid_argument("correct answer must be positive");
  double err = std::abs(a_correct - a_actual) / static_cast<double>(a_correct);
  return std::max(1.0 - err, 0.0);
}

std::vector<HarmonizedResponse> harmonize(
    const SessionRecord& record, const std::map<std::string, int>& correct_answers) {
  std::vector<HarmonizedResponse> out;
  out.reserve(record.responses.size());
  const size_t expected = record.group_type == GroupType::Individual ? 1 : 2;
  for (const InstanceResponse& r : record.responses) {
    if (r.members.size() != expected)
      throw std::invalid_argument("unit " + record.unit_id + " instance " +
                                  r.instance_id + ": expected " +
                                  std::to_string(expected) + " member responses, got " +
                                  std::to_string(r.members.size()));
    auto it = correct_answers.find(r.instance_id);
    if (it == correct_answers.end())
      throw std::invalid_argument("no correct answer known for instance " +
                                  r.instance_id);
    for (const MemberResponse& m : r.members)
      if (m.time_s <= 0.0)
        throw std::invalid_argument("unit " + record.unit_id + " instance " +
                                    r.instance_id + ": completion time must be positive");

    HarmonizedResponse h;
    h.instance_id = r.instance_id;
    switch (record.group_type) {
      case GroupType::Individual:
        h.accuracy = accuracy(it->second, r.members[0].answer);
        h.time_s = r.members[0].time_s;
        break;
      case GroupType::NominalPair:
        // Solving is disjunctive (either member suffices), waiting is
        // conjunctive (both must finish).
        h.accuracy = std::max(accuracy(it->second, r.members[0].answer),
                              accuracy(it->second, r.members[1].answer));
        h.time_s = std::max(r.members[0].time_s, r.members[1].time_s);
        break;
      case GroupType::AdHocPair:
        if (r.members[0].answer != r.members[1].answer)
          throw std::invalid_argument("unit " + record.unit_id + " instance " +
                                      r.instance_id +
                                      ": ad hoc pair answers disagree");
        h.accuracy = accuracy(it->second, r.members[0].answer);
        h.time_s = std::max(r.members[0].time_s, r.members[1].time_s);
        break;
    }
    out.push_back(std::move(h));
  }
  return out;
}

namespace {

void check_series(const PairedSeries& data, int R, int min_units) {
  if (R < 1000) throw std::invalid_argument("at least 1000 replicates required");
  if (static_cast<int>(data.units.size()) < min_units)
    throw std::invalid_argument("need at least " + std::to_string(min_units) +
                                " units");
  for (const auto& unit : data.units)
    if (unit.empty()) throw std::invalid_argument("unit with no measures");
}

double unit_mean_diff(const std::vector<std::pair<double, double>>& unit) {
  double sum = 0.0;
  for (auto [x, y] : unit) sum += y - x;
  return sum / static_cast<double>(unit.size());
}

double mean_of_unit_means(const PairedSeries& data) {
  double sum = 0.0;
  for (const auto& unit : data.units) sum += unit_mean_diff(unit);
  return sum / static_cast<double>(data.units.size());
}

// Linear-interpolation percentile on a sorted sample.
double percentile(const std::vector<double>& sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("empty sample");
  double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

BootstrapResult stratified_bootstrap(const PairedSeries& data, int R,
                                     std::uint64_t seed) {
  check_series(data, R, 2);
  BootstrapResult out;
  out.replicates = R;
  out.seed = seed;
  out.mean_diff = mean_of_unit_means(data);

  Rng rng(seed);
  const int units = static_cast<int>(data.units.size());
  std::vector<double> stats(R);
  for (int r = 0; r < R; ++r) {
    double sum = 0.0;
    for (int k = 0; k < units; ++k) {
      const auto& unit = data.units[rng.below_int(units)];
      const int m = static_cast<int>(unit.size());
      double unit_sum = 0.0;
      for (int j = 0; j < m; ++j) {
        auto [x, y] = unit[rng.below_int(m)];
        unit_sum += y - x;
      }
      sum += unit_sum / m;
    }
    stats[r] = sum / units;
  }
  std::sort(stats.begin(), stats.end());
  out.ci_low = percentile(stats, 0.025);
  out.ci_high = percentile(stats, 0.975);
  return out;
}

std::map<std::string, int> plan_answer_key(const SessionPlan& plan) {
  std::map<std::string, int> key;
  key[plan.control_cn.id] = plan.control_cn.answer;
  key[plan.control_sp.id] = plan.control_sp.answer;
  for (const auto& series : {plan.cn_series, plan.sp_series})
    for (const auto& list : series)
      for (const TaskInstance& inst : list) key[inst.id] = inst.answer;
  return key;
}

std::vector<SessionRecord> simulate_responses(const SessionPlan& plan,
                                              std::uint64_t seed,
                                              const SimulationParams& params) {
  std::vector<SessionRecord> out;
  for (const PlanUnit& unit : plan.units) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(unit.unit)));
    SessionRecord rec;
    rec.unit_id = "u" + std::to_string(unit.unit);
    const bool pair = unit.unit % 2 == 1;
    rec.group_type = pair ? GroupType::AdHocPair : GroupType::Individual;
    for (const TaskInstance& inst : answer_sequence(plan, unit)) {
      InstanceResponse r;
      r.instance_id = inst.id;
      double sd = pair ? params.pair_answer_sd : params.individual_answer_sd;
      int answer =
          std::max(0, inst.answer + static_cast<int>(std::lround(rng.normal(0.0, sd))));
      double log_mean =
          params.mean_log_time + (pair ? std::log(params.pair_time_factor) : 0.0);
      if (pair) {
        // Consensus answer; each member has their own completion time.
        r.members.push_back({answer, std::exp(rng.normal(log_mean, params.log_time_sd))});
        r.members.push_back({answer, std::exp(rng.normal(log_mean, params.log_time_sd))});
      } else {
        r.members.push_back({answer, std::exp(rng.normal(log_mean, params.log_time_sd))});
      }
      rec.responses.push_back(std::move(r));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

PermutationResult paired_permutation_test(const PairedSeries& data, int R,
                                          std::uint64_t seed) {
  check_series(data, R, 1);
  PermutationResult out;
  out.replicates = R;
  out.seed = seed;

  std::vector<double> diffs;
  diffs.reserve(data.units.size());
  for (const auto& unit : data.units) diffs.push_back(unit_mean_diff(unit));
  double observed = 0.0;
  for (double d : diffs) observed += d;
  observed /= static_cast<double>(diffs.size());
  out.observed = observed;

  Rng rng(seed);
  int extreme = 0;
  const double threshold = std::abs(observed);
  for (int r = 0; r < R; ++r) {
    double sum = 0.0;
    for (double d : diffs) sum += rng.below(2) ? d : -d;
    double stat = std::abs(sum / static_cast<double>(diffs.size()));
    // >= with a tiny slack so sign flips of the observed arrangement count as
    // extreme even after round-off.
    if (stat >= threshold - 1e-12 * std::max(1.0, threshold)) ++extreme;
  }
  out.p_value = (1.0 + extreme) / (static_cast<double>(R) + 1.0);
  return out;
}

}  // namespace graphtic

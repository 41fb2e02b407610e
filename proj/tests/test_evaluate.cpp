#include <cmath>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "graphtic/evaluate.hpp"
#include "graphtic/synth.hpp"

using graphtic::GroupType;
using graphtic::HarmonizedResponse;
using graphtic::InstanceResponse;
using graphtic::MemberResponse;
using graphtic::PairedSeries;
using graphtic::SessionPlan;
using graphtic::SessionRecord;

namespace {

SessionRecord record_of(GroupType type, const std::string& instance,
                        std::vector<MemberResponse> members) {
  SessionRecord rec;
  rec.unit_id = "u0";
  rec.group_type = type;
  rec.responses.push_back({instance, std::move(members)});
  return rec;
}

const SessionPlan& small_plan() {
  static SessionPlan plan = [] {
    graphtic::SynthParams sp;
    sp.mean_nodes = 42;
    sp.sd_nodes = 6;
    sp.min_nodes = 30;
    sp.max_nodes = 60;
    sp.mean_density = 0.05;
    sp.sd_density = 0.006;
    graphtic::StressParams stress;
    stress.restarts = 1;
    stress.max_iter = 50;
    stress.tol = 1e-4;
    std::vector<graphtic::Graph> graphs;
    std::vector<graphtic::Layout3D> layouts;
    for (auto& g : graphtic::synth_corpus(14, 9001, sp)) {
      auto res = graphtic::stress_layout(g, 5 + graphs.size(), stress);
      graphtic::normalize_to_view(res.layout);
      graphs.push_back(std::move(g));
      layouts.push_back(std::move(res.layout));
    }
    graphtic::SessionConfig config;
    config.instances_per_task = 3;
    config.pairings = 2;
    config.cn_answer_min = 1;
    config.sp_answer_min = 2;
    return graphtic::sample_plan(graphs, layouts, config, 12345);
  }();
  return plan;
}

}  // namespace

TEST_CASE("accuracy closed forms") {
  CHECK(graphtic::accuracy(5, 5) == doctest::Approx(1.0));
  CHECK(graphtic::accuracy(5, 0) == doctest::Approx(0.0));
  CHECK(graphtic::accuracy(10, 8) == doctest::Approx(0.8));
  CHECK(graphtic::accuracy(3, 9) == doctest::Approx(0.0));  // clamped at zero
  CHECK_THROWS_AS(graphtic::accuracy(0, 1), std::invalid_argument);
}

TEST_CASE("group type names round-trip") {
  for (GroupType t :
       {GroupType::Individual, GroupType::AdHocPair, GroupType::NominalPair})
    CHECK(graphtic::parse_group_type(graphtic::group_type_name(t)) == t);
  CHECK_THROWS_AS(graphtic::parse_group_type("committee"), std::invalid_argument);
}

TEST_CASE("harmonization closed forms") {
  std::map<std::string, int> key{{"i", 10}};

  // Nominal pair: best accuracy, slower time.
  auto nominal = graphtic::harmonize(
      record_of(GroupType::NominalPair, "i", {{8, 30.0}, {10, 50.0}}), key);
  REQUIRE(nominal.size() == 1);
  CHECK(nominal[0].accuracy == doctest::Approx(1.0));
  CHECK(nominal[0].time_s == doctest::Approx(50.0));

  // Ad hoc pair: one agreed answer, slower member time.
  auto adhoc = graphtic::harmonize(
      record_of(GroupType::AdHocPair, "i", {{8, 41.2}, {8, 41.5}}), key);
  REQUIRE(adhoc.size() == 1);
  CHECK(adhoc[0].accuracy == doctest::Approx(0.8));
  CHECK(adhoc[0].time_s == doctest::Approx(41.5));

  // Individuals pass through.
  auto solo =
      graphtic::harmonize(record_of(GroupType::Individual, "i", {{9, 21.0}}), key);
  REQUIRE(solo.size() == 1);
  CHECK(solo[0].accuracy == doctest::Approx(0.9));
  CHECK(solo[0].time_s == doctest::Approx(21.0));
}

TEST_CASE("harmonization rejects malformed records") {
  std::map<std::string, int> key{{"i", 10}};

  // Wrong member counts.
  CHECK_THROWS(graphtic::harmonize(
      record_of(GroupType::Individual, "i", {{9, 21.0}, {8, 22.0}}), key));
  CHECK_THROWS(
      graphtic::harmonize(record_of(GroupType::AdHocPair, "i", {{9, 21.0}}), key));

  // Ad hoc members must agree.
  CHECK_THROWS(graphtic::harmonize(
      record_of(GroupType::AdHocPair, "i", {{9, 21.0}, {8, 22.0}}), key));

  // Non-positive times.
  CHECK_THROWS(
      graphtic::harmonize(record_of(GroupType::Individual, "i", {{9, 0.0}}), key));

  // Unknown instance.
  CHECK_THROWS(graphtic::harmonize(
      record_of(GroupType::Individual, "other", {{9, 21.0}}), key));
}

TEST_CASE("harmonization properties on randomized pair records") {
  std::mt19937 rng(700);
  std::uniform_int_distribution<int> answer(0, 20);
  std::uniform_real_distribution<double> time(0.5, 120.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::map<std::string, int> key{{"x", 1 + static_cast<int>(rng() % 15)}};
    int a1 = answer(rng), a2 = answer(rng);
    double t1 = time(rng), t2 = time(rng);

    auto nominal = graphtic::harmonize(
        record_of(GroupType::NominalPair, "x", {{a1, t1}, {a2, t2}}), key);
    double best = std::max(graphtic::accuracy(key["x"], a1),
                           graphtic::accuracy(key["x"], a2));
    CHECK(nominal[0].accuracy == doctest::Approx(best));
    CHECK(nominal[0].time_s == doctest::Approx(std::max(t1, t2)));

    auto adhoc = graphtic::harmonize(
        record_of(GroupType::AdHocPair, "x", {{a1, t1}, {a1, t2}}), key);
    CHECK(adhoc[0].accuracy == doctest::Approx(graphtic::accuracy(key["x"], a1)));
    CHECK(adhoc[0].time_s == doctest::Approx(std::max(t1, t2)));
  }
}

TEST_CASE("bootstrap degenerate forms") {
  PairedSeries same;
  same.units = {{{1.0, 1.0}, {2.5, 2.5}}, {{0.3, 0.3}}, {{4.0, 4.0}, {5.0, 5.0}}};
  auto zero = graphtic::stratified_bootstrap(same, 1000, 9);
  CHECK(zero.mean_diff == doctest::Approx(0.0));
  CHECK(zero.ci_low == doctest::Approx(0.0));
  CHECK(zero.ci_high == doctest::Approx(0.0));

  PairedSeries shifted;
  shifted.units = {{{1.0, 4.0}, {2.5, 5.5}}, {{0.3, 3.3}}, {{4.0, 7.0}}};
  auto three = graphtic::stratified_bootstrap(shifted, 1000, 9);
  CHECK(three.mean_diff == doctest::Approx(3.0));
  CHECK(three.ci_low == doctest::Approx(3.0));
  CHECK(three.ci_high == doctest::Approx(3.0));
}

TEST_CASE("bootstrap input validation and determinism") {
  PairedSeries data;
  data.units = {{{1.0, 2.0}, {2.0, 2.5}}, {{0.5, 1.0}, {1.5, 2.5}}};
  CHECK_THROWS(graphtic::stratified_bootstrap(data, 999, 1));
  PairedSeries one;
  one.units = {{{1.0, 2.0}}};
  CHECK_THROWS(graphtic::stratified_bootstrap(one, 1000, 1));

  auto a = graphtic::stratified_bootstrap(data, 2000, 42);
  auto b = graphtic::stratified_bootstrap(data, 2000, 42);
  CHECK(a.mean_diff == b.mean_diff);
  CHECK(a.ci_low == b.ci_low);
  CHECK(a.ci_high == b.ci_high);
  auto c = graphtic::stratified_bootstrap(data, 2000, 43);
  bool differs = a.ci_low != c.ci_low || a.ci_high != c.ci_high;
  CHECK(differs);
  CHECK(a.ci_low <= a.mean_diff);
  CHECK(a.mean_diff <= a.ci_high);
}

TEST_CASE("permutation test closed forms") {
  // Identical conditions: every difference is zero, nothing to reject.
  PairedSeries same;
  same.units = {{{1.0, 1.0}, {2.0, 2.0}}, {{0.5, 0.5}}};
  auto flat = graphtic::paired_permutation_test(same, 1000, 3);
  CHECK(flat.p_value == doctest::Approx(1.0));
  CHECK(flat.observed == doctest::Approx(0.0));

  // Thirty units all shifted the same way: no random sign assignment ties
  // the observed statistic, so p hits the attainable floor.
  PairedSeries strong;
  for (int i = 0; i < 30; ++i)
    strong.units.push_back({{0.0, 5.0 + 0.01 * i}});
  auto tight = graphtic::paired_permutation_test(strong, 1000, 3);
  CHECK(tight.p_value == doctest::Approx(1.0 / 1001.0));
  CHECK(tight.observed > 4.9);

  CHECK_THROWS(graphtic::paired_permutation_test(same, 999, 3));

  auto again = graphtic::paired_permutation_test(strong, 1000, 3);
  CHECK(again.p_value == tight.p_value);
}

TEST_CASE("simulated responses mirror the plan structure deterministically") {
  const SessionPlan& plan = small_plan();
  auto key = graphtic::plan_answer_key(plan);

  // Every planned instance is in the key.
  CHECK(key.count(plan.control_cn.id) == 1);
  CHECK(key.count(plan.control_sp.id) == 1);
  for (const auto& series : plan.cn_series)
    for (const auto& inst : series) {
      REQUIRE(key.count(inst.id) == 1);
      CHECK(key.at(inst.id) == inst.answer);
    }

  auto records = graphtic::simulate_responses(plan, 555);
  REQUIRE(records.size() == plan.units.size());
  for (size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const auto& unit = plan.units[i];
    CHECK(rec.unit_id == "u" + std::to_string(unit.unit));
    bool is_pair = unit.unit % 2 == 1;
    CHECK(rec.group_type ==
          (is_pair ? GroupType::AdHocPair : GroupType::Individual));

    auto seq = graphtic::answer_sequence(plan, unit);
    REQUIRE(rec.responses.size() == seq.size());
    for (size_t k = 0; k < seq.size(); ++k) {
      CHECK(rec.responses[k].instance_id == seq[k].id);
      REQUIRE(rec.responses[k].members.size() == (is_pair ? 2u : 1u));
      for (const auto& m : rec.responses[k].members) {
        CHECK(m.time_s > 0.0);
        CHECK(m.answer >= 0);
      }
      if (is_pair)
        CHECK(rec.responses[k].members[0].answer ==
              rec.responses[k].members[1].answer);
    }

    // Harmonization accepts the whole simulated record.
    auto harmonized = graphtic::harmonize(rec, key);
    CHECK(harmonized.size() == seq.size());
  }

  auto rerun = graphtic::simulate_responses(plan, 555);
  REQUIRE(rerun.size() == records.size());
  for (size_t i = 0; i < records.size(); ++i) {
    for (size_t k = 0; k < records[i].responses.size(); ++k)
      for (size_t m = 0; m < records[i].responses[k].members.size(); ++m) {
        CHECK(records[i].responses[k].members[m].answer ==
              rerun[i].responses[k].members[m].answer);
        CHECK(records[i].responses[k].members[m].time_s ==
              rerun[i].responses[k].members[m].time_s);
      }
  }
}

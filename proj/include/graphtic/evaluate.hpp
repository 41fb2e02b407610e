#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "graphtic/instances.hpp"

namespace graphtic {

enum class GroupType { Individual, AdHocPair, NominalPair };

const char* group_type_name(GroupType type);
GroupType parse_group_type(const std::string& name);  // throws on unknown

struct MemberResponse {
  int answer = 0;
  double time_s = 0.0;
};

struct InstanceResponse {
  std::string instance_id;
  std::vector<MemberResponse> members;  // 1 for individuals, 2 for pairs
};

struct SessionRecord {
  std::string unit_id;
  GroupType group_type = GroupType::Individual;
  std::vector<InstanceResponse> responses;
};

/// max(1 - |a_correct - a_actual| / a_correct, 0). Throws when a_correct <= 0.
double accuracy(int a_correct, int a_actual);

struct HarmonizedResponse {
  std::string instance_id;
  double accuracy = 0.0;
  double time_s = 0.0;
};

/// Collapses a unit's responses to one (accuracy, time) per instance:
/// individuals pass through; nominal pairs take the best member accuracy and
/// the slower member time; ad hoc pairs must agree on the answer (validated)
/// and take the slower member time. Wrong member counts, non-positive times,
/// or instances missing from correct_answers raise errors.
std::vector<HarmonizedResponse> harmonize(
    const SessionRecord& record, const std::map<std::string, int>& correct_answers);

/// Paired measures grouped by unit: units[k] holds unit k's (x, y) pairs,
/// x and y being the two conditions compared on the same repeated measures.
struct PairedSeries {
  std::vector<std::vector<std::pair<double, double>>> units;
};

struct BootstrapResult {
  double mean_diff = 0.0;  // mean over units of the unit mean of (y - x)
  double ci_low = 0.0;
  double ci_high = 0.0;
  int replicates = 0;
  std::uint64_t seed = 0;
};

/// Nonparametric bootstrap of the paired mean difference, stratified for
/// repeated measures: units are resampled with replacement, then each
/// resampled unit's measures are resampled within it. 95% percentile CI.
/// Requires R >= 1000 and >= 2 units, each non-empty.
BootstrapResult stratified_bootstrap(const PairedSeries& data, int R,
                                     std::uint64_t seed);

struct PermutationResult {
  double observed = 0.0;  // mean of unit mean differences
  double p_value = 1.0;
  int replicates = 0;
  std::uint64_t seed = 0;
};

/// Two-sided paired permutation test: unit-level sign flips of the unit mean
/// differences, p = (1 + #{|T*| >= |T|}) / (R + 1). Requires R >= 1000 and
/// at least one non-empty unit. All-zero differences give p = 1.
PermutationResult paired_permutation_test(const PairedSeries& data, int R,
                                          std::uint64_t seed);

struct SimulationParams {
  double individual_answer_sd = 1.2;
  double pair_answer_sd = 0.7;       // simulated pairs answer more accurately
  double mean_log_time = 3.0;        // ~20 s median per instance
  double log_time_sd = 0.35;
  double pair_time_factor = 1.3;     // and take longer
};

/// Synthetic responses for a plan, for demonstrating the evaluation path
/// without human data: the even unit of each pairing responds as an
/// individual, the odd one as an ad hoc pair; answers scatter around the
/// correct value and times are log-normal. Deterministic under seed.
std::vector<SessionRecord> simulate_responses(const SessionPlan& plan,
                                              std::uint64_t seed,
                                              const SimulationParams& params = {});

/// Correct answers of every instance in the plan, keyed by instance id.
std::map<std::string, int> plan_answer_key(const SessionPlan& plan);

}  // namespace graphtic

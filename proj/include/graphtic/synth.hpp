#pragma once

#include <cstdint>
#include <vector>

#include "graphtic/graph.hpp"
#include "graphtic/vec3.hpp"

namespace graphtic {

/// Random geometric graphs in an elongated box, matched to the study corpus
/// statistics: node count ~ N(149, 40), density ~ N(0.05, 0.01), both
/// truncated to keep the graphs usable.
struct SynthParams {
  double mean_nodes = 149.0;
  double sd_nodes = 40.0;
  double mean_density = 0.05;
  double sd_density = 0.01;
  int min_nodes = 40;
  int max_nodes = 400;
  Vec3 box{3.0, 1.0, 1.0};  // sampling volume; elongation stretches hop counts
  int max_attempts = 64;
};

/// One connected graph: points dropped uniformly in the box, the m closest
/// pairs become edges where m realizes the sampled density, then the largest
/// component is kept. Redraws until that component retains at least 95% of the
/// nodes. Deterministic under seed; throws std::runtime_error when
/// max_attempts redraws never satisfy the retention bound.
Graph synth_graph(std::uint64_t seed, const SynthParams& params = {});

/// A corpus of `count` independent graphs with per-index derived seeds.
std::vector<Graph> synth_corpus(int count, std::uint64_t seed,
                                const SynthParams& params = {});

}  // namespace graphtic

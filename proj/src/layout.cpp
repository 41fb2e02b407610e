#include "graphtic/layout.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphtic/rng.hpp"

namespace graphtic {

namespace {

std::vector<std::vector<int>> all_pairs_hops(const Graph& g) {
  std::vector<std::vector<int>> hops(g.node_count());
  for (NodeId v = 0; v < g.node_count(); ++v) {
    hops[v] = bfs_distances(g, v);
    for (int d : hops[v])
      if (d < 0) throw std::invalid_argument("graph must be connected for layout");
  }
  return hops;
}

int hop_diameter(const std::vector<std::vector<int>>& hops) {
  int diameter = 0;
  for (const auto& row : hops)
    for (int d : row) diameter = std::max(diameter, d);
  return diameter;
}

double stress_of(const std::vector<std::vector<int>>& hops,
                 const std::vector<Vec3>& pos, double L) {
  double total = 0.0;
  const int n = static_cast<int>(pos.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double d = hops[i][j] * L;
      double diff = distance(pos[i], pos[j]) - d;
      total += diff * diff / (d * d);
    }
  }
  return total;
}

}  // namespace

double layout_stress(const Graph& g, const std::vector<Vec3>& positions,
                     double ideal_edge_length) {
  if (static_cast<int>(positions.size()) != g.node_count())
    throw std::invalid_argument("position count does not match node count");
  if (ideal_edge_length <= 0.0)
    throw std::invalid_argument("ideal_edge_length must be positive");
  if (g.node_count() < 2) return 0.0;
  return stress_of(all_pairs_hops(g), positions, ideal_edge_length);
}

StressResult stress_layout(const Graph& g, std::uint64_t seed,
                           const StressParams& params) {
  const int n = g.node_count();
  if (n == 0) throw std::invalid_argument("cannot lay out an empty graph");
  if (params.restarts < 1) throw std::invalid_argument("restarts must be positive");
  if (params.max_iter < 1) throw std::invalid_argument("max_iter must be positive");

  auto hops = all_pairs_hops(g);
  double L = params.ideal_edge_length;
  if (L <= 0.0) {
    int diameter = hop_diameter(hops);
    L = diameter > 0 ? params.cube_side / diameter : params.cube_side;
  }

  StressResult best;
  best.stats.seed = seed;
  best.stats.ideal_edge_length = L;
  best.stats.stress = std::numeric_limits<double>::infinity();

  for (int restart = 0; restart < params.restarts; ++restart) {
    Rng rng(derive_seed(seed, restart));
    std::vector<Vec3> pos(n);
    for (Vec3& p : pos)
      p = {rng.uniform(0.0, params.cube_side), rng.uniform(0.0, params.cube_side),
           rng.uniform(0.0, params.cube_side)};

    std::vector<double> history;
    double prev = std::numeric_limits<double>::infinity();
    int sweeps = 0;
    if (n >= 2) {
      for (int iter = 0; iter < params.max_iter; ++iter) {
        // One Gauss-Seidel sweep of per-node majorization updates. Each update
        // minimizes that node's majorizing quadratic, so stress cannot rise.
        for (int i = 0; i < n; ++i) {
          Vec3 acc{0, 0, 0};
          double wsum = 0.0;
          for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            double d = hops[i][j] * L;
            double w = 1.0 / (d * d);
            Vec3 delta = pos[i] - pos[j];
            double len = norm(delta);
            Vec3 dir = len > 1e-12 ? delta / len : Vec3{1, 0, 0};
            acc += w * (pos[j] + d * dir);
            wsum += w;
          }
          pos[i] = acc / wsum;
        }
        ++sweeps;
        double cur = stress_of(hops, pos, L);
        history.push_back(cur);
        if (std::isfinite(prev) && prev - cur <= params.tol * prev) break;
        prev = cur;
      }
    } else {
      history.push_back(0.0);
    }

    double final_stress = history.back();
    if (final_stress < best.stats.stress) {
      best.layout.positions = std::move(pos);
      best.stats.stress = final_stress;
      best.stats.iterations = sweeps;
      best.stats.stress_history = std::move(history);
    }
  }

  Vec3 r{best.layout.node_radius, best.layout.node_radius, best.layout.node_radius};
  Box3 bbox{best.layout.positions[0], best.layout.positions[0]};
  for (const Vec3& p : best.layout.positions) {
    bbox.lo = {std::min(bbox.lo.x, p.x), std::min(bbox.lo.y, p.y), std::min(bbox.lo.z, p.z)};
    bbox.hi = {std::max(bbox.hi.x, p.x), std::max(bbox.hi.y, p.y), std::max(bbox.hi.z, p.z)};
  }
  best.layout.bounds = {bbox.lo - r, bbox.hi + r};
  return best;
}

void normalize_to_view(Layout3D& layout, double cube_side, double height) {
  if (layout.positions.empty()) throw std::invalid_argument("layout has no positions");
  if (cube_side <= 0.0) throw std::invalid_argument("cube_side must be positive");

  Box3 bbox{layout.positions[0], layout.positions[0]};
  for (const Vec3& p : layout.positions) {
    bbox.lo = {std::min(bbox.lo.x, p.x), std::min(bbox.lo.y, p.y), std::min(bbox.lo.z, p.z)};
    bbox.hi = {std::max(bbox.hi.x, p.x), std::max(bbox.hi.y, p.y), std::max(bbox.hi.z, p.z)};
  }
  Vec3 e = bbox.extent();
  double span = std::max({e.x, e.y, e.z});
  if (span <= 0.0) throw std::invalid_argument("layout has zero extent");
  double s = cube_side / span;

  Vec3 bary{0, 0, 0};
  for (Vec3& p : layout.positions) {
    p = s * p;
    bary += p;
  }
  bary = bary / static_cast<double>(layout.positions.size());
  Vec3 shift = Vec3{0.0, height, 0.0} - bary;
  for (Vec3& p : layout.positions) p += shift;

  Vec3 c = s * bbox.center() + shift;
  Vec3 half{cube_side / 2.0, cube_side / 2.0, cube_side / 2.0};
  layout.bounds = {c - half, c + half};
}

}  // namespace graphtic

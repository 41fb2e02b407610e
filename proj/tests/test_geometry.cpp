#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "graphtic/geometry.hpp"
#include "oracles.hpp"

using graphtic::Box3;
using graphtic::Mat3;
using graphtic::MveeParams;
using graphtic::Quadric;
using graphtic::Vec3;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Random ellipsoid via Gram-Schmidt axes and axis lengths in [0.3, 1.5].
Quadric random_ellipsoid(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec3 axes[3];
  for (int k = 0; k < 3; ++k) {
    for (;;) {
      Vec3 v{u(rng), u(rng), u(rng)};
      for (int j = 0; j < k; ++j) v -= graphtic::dot(v, axes[j]) * axes[j];
      double n = graphtic::norm(v);
      if (n > 0.2) {
        axes[k] = v / n;
        break;
      }
    }
  }
  std::uniform_real_distribution<double> len(0.3, 1.5);
  Mat3 form{};
  for (int k = 0; k < 3; ++k) {
    double inv = 1.0 / (len(rng) * len(rng));
    double a[3] = {axes[k].x, axes[k].y, axes[k].z};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) form.m[i][j] += inv * a[i] * a[j];
  }
  Vec3 center{u(rng), u(rng), u(rng)};
  return Quadric::ellipsoid(center, form);
}

}  // namespace

TEST_CASE("node angle on the canonical configurations") {
  CHECK(graphtic::node_angle({0, 0, 0}, {1, 0, 0}, {2, 0, 0}) == doctest::Approx(180.0));
  CHECK(graphtic::node_angle({0, 0, 0}, {1, 0, 0}, {1, 1, 0}) == doctest::Approx(90.0));
  CHECK(graphtic::node_angle({2, 0, 0}, {0, 0, 0}, {3, 0, 0}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(graphtic::node_angle({1, 1, 1}, {1, 1, 1}, {0, 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("sphere quadric membership matches the metric ball") {
  Quadric q = Quadric::sphere({1.0, 2.0, 3.0}, 0.5);
  CHECK(q.contains({1.0, 2.0, 3.0}));
  CHECK(q.contains({1.5, 2.0, 3.0}));
  CHECK_FALSE(q.contains({1.51, 2.0, 3.0}));
  CHECK(q.volume() == doctest::Approx(4.0 / 3.0 * kPi * 0.125).epsilon(1e-9));
  auto axes = q.semi_axes();
  for (double a : axes) CHECK(a == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("mvee of the unit cube corners is the circumscribed ball") {
  std::vector<Vec3> pts;
  for (int i = 0; i < 8; ++i)
    pts.push_back({static_cast<double>(i & 1), static_cast<double>((i >> 1) & 1),
                   static_cast<double>((i >> 2) & 1)});
  Quadric q = graphtic::mvee(pts);
  double r = std::sqrt(3.0) / 2.0;
  for (double a : q.semi_axes()) CHECK(a == doctest::Approx(r).epsilon(0.01));
  CHECK(graphtic::distance(q.center, {0.5, 0.5, 0.5}) < 0.01);
  for (const Vec3& p : pts) CHECK(q.value(p) <= 1.0 + 1e-6);
}

TEST_CASE("mvee of a single point is the minimum-thickness ball") {
  MveeParams params;
  params.min_thickness = 0.05;
  Quadric q = graphtic::mvee({{2.0, -1.0, 0.5}}, params);
  for (double a : q.semi_axes()) CHECK(a == doctest::Approx(0.05).epsilon(1e-6));
  CHECK(graphtic::distance(q.center, {2.0, -1.0, 0.5}) < 1e-9);
}

TEST_CASE("mvee handles collinear input by inflating the flat directions") {
  MveeParams params;
  params.min_thickness = 0.01;
  std::vector<Vec3> pts;
  for (int i = 0; i <= 4; ++i) pts.push_back({0.25 * i, 0.5 * i, -0.25 * i});
  Quadric q = graphtic::mvee(pts, params);
  for (const Vec3& p : pts) CHECK(q.value(p) <= 1.0 + 1e-6);
  auto axes = q.semi_axes();
  CHECK(axes[0] > 0.5);
  CHECK(axes[1] == doctest::Approx(0.01).epsilon(1e-3));
  CHECK(axes[2] == doctest::Approx(0.01).epsilon(1e-3));
}

TEST_CASE("mvee volume tracks the log-det oracle on random point sets") {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Vec3> pts(20);
    for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
    Quadric q = graphtic::mvee(pts);
    for (const Vec3& p : pts) CHECK(q.value(p) <= 1.0 + 1e-6);
    auto ref = oracle::mvee_logdet(pts);
    REQUIRE(ref.volume > 0.0);
    CHECK(q.volume() <= ref.volume * (1.0 + 1e-3));
    CHECK(q.volume() >= ref.volume * (1.0 - 1e-3));
  }
}

TEST_CASE("mvee quadric is symmetric positive definite") {
  std::mt19937 rng(102);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Vec3> pts(8);
    for (auto& p : pts) p = {u(rng), u(rng), u(rng)};
    Quadric q = graphtic::mvee(pts);
    const auto& m = q.form.m;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) CHECK(std::abs(m[i][j] - m[j][i]) < 1e-9);
    // Sylvester criterion for positive definiteness.
    CHECK(m[0][0] > 0.0);
    CHECK(m[0][0] * m[1][1] - m[0][1] * m[1][0] > 0.0);
    oracle::Mat full{{m[0][0], m[0][1], m[0][2]},
                     {m[1][0], m[1][1], m[1][2]},
                     {m[2][0], m[2][1], m[2][2]}};
    CHECK(oracle::det3(full) > 0.0);
  }
}

TEST_CASE("mvee is deterministic") {
  std::vector<Vec3> pts{{0, 0, 0}, {1, 0.2, 0}, {0.3, 1, 0.5}, {0.8, 0.8, 1}, {0.1, 0.5, 0.9}};
  Quadric a = graphtic::mvee(pts);
  Quadric b = graphtic::mvee(pts);
  CHECK(a.volume() == b.volume());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK(a.form.m[i][j] == b.form.m[i][j]);
}

TEST_CASE("segment intersection on the forced cases") {
  Quadric ball = Quadric::sphere({0, 0, 0}, 1.0);
  CHECK(graphtic::segment_intersects(ball, {-2, 0, 0}, {2, 0, 0}));
  CHECK_FALSE(graphtic::segment_intersects(ball, {5, 5, 5}, {6, 5, 5}));

  double x = std::sqrt(0.999);
  CHECK(graphtic::segment_intersects(ball, {x, -1, 0}, {x, 1, 0}));
  CHECK(oracle::segment_in_region_sampled(ball, {x, -1, 0}, {x, 1, 0}));

  double outside = std::sqrt(1.001);
  CHECK_FALSE(graphtic::segment_intersects(ball, {outside, -1, 0}, {outside, 1, 0}));
  CHECK_FALSE(oracle::segment_in_region_sampled(ball, {outside, -1, 0}, {outside, 1, 0}));
}

TEST_CASE("segment intersection agrees with dense sampling on random ellipsoids") {
  std::mt19937 rng(103);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int hits = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Quadric q = random_ellipsoid(rng);
    Vec3 a{u(rng), u(rng), u(rng)};
    Vec3 b{u(rng), u(rng), u(rng)};
    bool lib = graphtic::segment_intersects(q, a, b);
    bool ref = oracle::segment_in_region_sampled(q, a, b);
    CHECK(lib == ref);
    hits += lib ? 1 : 0;
  }
  CHECK(hits > 5);  // the comparison exercised both outcomes
  CHECK(hits < 95);
}

TEST_CASE("clipped length on the forced cases") {
  Quadric ball = Quadric::sphere({0, 0, 0}, 0.5);
  CHECK(graphtic::clipped_length(ball, {-1, 0, 0}, {1, 0, 0}) ==
        doctest::Approx(1.0).epsilon(1e-9));
  CHECK(graphtic::clipped_length(ball, {2, 2, 2}, {3, 2, 2}) == 0.0);
}

TEST_CASE("clipped length tracks the sampling oracle on random ellipsoids") {
  std::mt19937 rng(104);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (int trial = 0; trial < 40; ++trial) {
    Quadric q = random_ellipsoid(rng);
    Vec3 a{u(rng), u(rng), u(rng)};
    Vec3 b{u(rng), u(rng), u(rng)};
    double lib = graphtic::clipped_length(q, a, b);
    double ref = oracle::clipped_length_sampled(q, a, b);
    CHECK(std::abs(lib - ref) < 1e-4);
  }
}

TEST_CASE("circle-rectangle area on closed forms") {
  // Full disc inside the rectangle.
  CHECK(graphtic::circle_rect_area(0, 0, 1.0, -2, 2, -2, 2) ==
        doctest::Approx(kPi).epsilon(1e-9));
  // Rectangle misses the disc.
  CHECK(graphtic::circle_rect_area(0, 0, 1.0, 2, 3, 2, 3) == doctest::Approx(0.0));
  // Left half-plane cut.
  CHECK(graphtic::circle_rect_area(0, 0, 1.0, -2, 0, -2, 2) ==
        doctest::Approx(kPi / 2).epsilon(1e-9));
  // Quarter cut.
  CHECK(graphtic::circle_rect_area(0, 0, 1.0, 0, 2, 0, 2) ==
        doctest::Approx(kPi / 4).epsilon(1e-9));
}

TEST_CASE("sphere-box volume against closed forms and Monte Carlo") {
  Box3 big{{-2, -2, -2}, {2, 2, 2}};
  double full = 4.0 / 3.0 * kPi * 0.4 * 0.4 * 0.4;
  CHECK(graphtic::sphere_box_volume({0, 0, 0}, 0.4, big) ==
        doctest::Approx(full).epsilon(1e-9));

  Box3 half{{0, -2, -2}, {2, 2, 2}};
  CHECK(graphtic::sphere_box_volume({0, 0, 0}, 0.4, half) ==
        doctest::Approx(full / 2).epsilon(1e-7));

  Box3 away{{5, 5, 5}, {6, 6, 6}};
  CHECK(graphtic::sphere_box_volume({0, 0, 0}, 0.4, away) == doctest::Approx(0.0));

  std::mt19937 rng(105);
  std::uniform_real_distribution<double> u(-0.6, 0.6);
  for (int trial = 0; trial < 12; ++trial) {
    Vec3 c{u(rng), u(rng), u(rng)};
    double r = 0.2 + 0.4 * std::uniform_real_distribution<double>(0, 1)(rng);
    Box3 box{{-0.5, -0.5, -0.5}, {0.5, 0.5, 0.5}};
    double lib = graphtic::sphere_box_volume(c, r, box);
    double ref = oracle::mc_sphere_box(c, r, box, 400000, 900 + trial);
    CHECK(lib == doctest::Approx(ref).epsilon(0.02));
  }
}

TEST_CASE("cylinder-box volume is analytic inside and sampled across the boundary") {
  Box3 box{{-1, -1, -1}, {1, 1, 1}};
  auto inside = graphtic::cylinder_box_volume({-0.5, 0, 0}, {0.5, 0, 0}, 0.1, box, 7);
  CHECK(inside.exact);
  CHECK(inside.volume == doctest::Approx(kPi * 0.01 * 1.0).epsilon(1e-9));

  auto crossing = graphtic::cylinder_box_volume({-2, 0, 0}, {2, 0, 0}, 0.1, box, 7);
  CHECK_FALSE(crossing.exact);
  double ref = oracle::mc_cylinder_box({-2, 0, 0}, {2, 0, 0}, 0.1, box, 400000, 42);
  CHECK(crossing.volume == doctest::Approx(ref).epsilon(0.03));

  // Determinism of the sampled path.
  auto again = graphtic::cylinder_box_volume({-2, 0, 0}, {2, 0, 0}, 0.1, box, 7);
  CHECK(crossing.volume == again.volume);
}

TEST_CASE("quadric inflation grows the membership margin") {
  Quadric ball = Quadric::sphere({0, 0, 0}, 1.0);
  Quadric grown = ball.inflated(0.25);
  CHECK(grown.contains({1.2, 0, 0}));
  CHECK_FALSE(grown.contains({1.3, 0, 0}));
}

#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "graphtic/vec3.hpp"

namespace graphtic {

/// Symmetric 3x3 matrix, row-major.
struct Mat3 {
  double m[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};

  static Mat3 identity();
  static Mat3 diagonal(double a, double b, double c);
  Vec3 mul(const Vec3& p) const;
  Mat3 scaled(double s) const;
};

/// Region {x : (x - center)^T form (x - center) <= 1}. form must be symmetric
/// positive definite; a sphere of radius r has form = I / r^2.
struct Quadric {
  Vec3 center;
  Mat3 form;

  static Quadric sphere(const Vec3& center, double radius);
  static Quadric ellipsoid(const Vec3& center, const Mat3& form) { return {center, form}; }

  /// (p - center)^T form (p - center); inside iff <= 1.
  double value(const Vec3& p) const;
  bool contains(const Vec3& p, double tol = 0.0) const { return value(p) <= 1.0 + tol; }

  /// Region scaled about its center so every semi-axis grows by `margin`
  /// (e.g. to account for the radius of a ball-shaped probe).
  Quadric inflated(double margin) const;

  /// Lengths of the three semi-axes, descending.
  std::array<double, 3> semi_axes() const;

  double volume() const;
};

/// True when any point of segment [a, b] lies inside the region.
/// The quadric form restricted to the segment is a quadratic in t; membership
/// is its minimum over [0, 1] at most 1.
bool segment_intersects(const Quadric& q, const Vec3& a, const Vec3& b, double tol = 0.0);

/// Length of the part of segment [a, b] inside the region (root interval of
/// the quadratic, clipped to [0, 1]).
double clipped_length(const Quadric& q, const Vec3& a, const Vec3& b);

struct MveeParams {
  double eps = 1e-3;     // relative optimality gap of the Khachiyan iteration
  int max_iter = 10000;  // safety stop
  double min_thickness = 0.0;  // floor for vanishing semi-axes (degenerate inputs)
};

/// Minimum-volume enclosing ellipsoid of a point set (Khachiyan's barycentric
/// coordinate ascent). Degenerate sets (coplanar, collinear, coincident) are
/// handled by solving in the affine hull and inflating the flat directions to
/// `min_thickness`. The result is rescaled outward so that every input point
/// satisfies value(p) <= 1 exactly, eps only loosens volume optimality.
/// Throws std::invalid_argument when points is empty.
Quadric mvee(const std::vector<Vec3>& points, const MveeParams& params = {});

/// Angle in degrees between vectors (prev - at) and (next - at), in [0, 180].
/// This is the interior angle of a polyline at `at`.
double node_angle(const Vec3& prev, const Vec3& at, const Vec3& next);

/// Area of the intersection of a disc (center (cx, cy), radius r) with an
/// axis-aligned rectangle [x0, x1] x [y0, y1]. Exact (quarter-plane
/// decomposition), no sampling.
double circle_rect_area(double cx, double cy, double r, double x0, double x1, double y0,
                        double y1);

/// Volume of the intersection of a ball with an axis-aligned box, by
/// Gauss-Legendre integration of circle_rect_area over z slices.
double sphere_box_volume(const Vec3& center, double radius, const Box3& box);

struct CylinderClipResult {
  double volume = 0.0;
  bool exact = false;  // analytic (fully inside); otherwise Monte Carlo
};

/// Volume of the intersection of a finite cylinder (axis a-b, radius r) with
/// an axis-aligned box. Analytic when the cylinder's bounding capsule lies
/// inside the box; otherwise Monte Carlo with `samples` points from `seed`.
CylinderClipResult cylinder_box_volume(const Vec3& a, const Vec3& b, double radius,
                                       const Box3& box, std::uint64_t seed,
                                       int samples = 100000);

}  // namespace graphtic

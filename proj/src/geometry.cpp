#include "graphtic/geometry.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "graphtic/rng.hpp"

namespace graphtic {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out(i, j) = m.m[i][j];
  return out;
}

Mat3 from_eigen(const Eigen::Matrix3d& m) {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.m[i][j] = m(i, j);
  return out;
}

}  // namespace

Mat3 Mat3::identity() { return diagonal(1.0, 1.0, 1.0); }

Mat3 Mat3::diagonal(double a, double b, double c) {
  Mat3 out;
  out.m[0][0] = a;
  out.m[1][1] = b;
  out.m[2][2] = c;
  return out;
}

Vec3 Mat3::mul(const Vec3& p) const {
  return {m[0][0] * p.x + m[0][1] * p.y + m[0][2] * p.z,
          m[1][0] * p.x + m[1][1] * p.y + m[1][2] * p.z,
          m[2][0] * p.x + m[2][1] * p.y + m[2][2] * p.z};
}

Mat3 Mat3::scaled(double s) const {
  Mat3 out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out.m[i][j] = m[i][j] * s;
  return out;
}

Quadric Quadric::sphere(const Vec3& center, double radius) {
  if (radius <= 0.0) throw std::invalid_argument("sphere radius must be positive");
  double inv = 1.0 / (radius * radius);
  return {center, Mat3::diagonal(inv, inv, inv)};
}

double Quadric::value(const Vec3& p) const {
  Vec3 d = p - center;
  return dot(d, form.mul(d));
}

Quadric Quadric::inflated(double margin) const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(to_eigen(form));
  Eigen::Vector3d lambda = eig.eigenvalues();
  Eigen::Matrix3d vecs = eig.eigenvectors();
  Eigen::Vector3d grown;
  for (int i = 0; i < 3; ++i) {
    if (lambda(i) <= 0.0) throw std::invalid_argument("quadric form is not positive definite");
    double axis = 1.0 / std::sqrt(lambda(i)) + margin;
    if (axis <= 0.0) throw std::invalid_argument("inflation margin collapses an axis");
    grown(i) = 1.0 / (axis * axis);
  }
  Eigen::Matrix3d out = vecs * grown.asDiagonal() * vecs.transpose();
  return {center, from_eigen(out)};
}

std::array<double, 3> Quadric::semi_axes() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(to_eigen(form));
  Eigen::Vector3d lambda = eig.eigenvalues();  // ascending
  std::array<double, 3> axes;
  for (int i = 0; i < 3; ++i) {
    double l = lambda(i);
    axes[i] = l > 0.0 ? 1.0 / std::sqrt(l) : std::numeric_limits<double>::infinity();
  }
  return axes;  // ascending eigenvalues give descending axes
}

double Quadric::volume() const {
  double det = to_eigen(form).determinant();
  if (det <= 0.0) return std::numeric_limits<double>::infinity();
  return 4.0 * kPi / (3.0 * std::sqrt(det));
}

namespace {

// Coefficients of f(t) = value(a + t (b - a)) = q2 t^2 + 2 q1 t + q0.
void segment_quadratic(const Quadric& q, const Vec3& a, const Vec3& b, double& q2,
                       double& q1, double& q0) {
  Vec3 d = b - a;
  Vec3 w = a - q.center;
  Vec3 fd = q.form.mul(d);
  q2 = dot(d, fd);
  q1 = dot(w, fd);
  q0 = dot(w, q.form.mul(w));
}

}  // namespace

bool segment_intersects(const Quadric& q, const Vec3& a, const Vec3& b, double tol) {
  double q2, q1, q0;
  segment_quadratic(q, a, b, q2, q1, q0);
  double t = 0.0;
  if (q2 > 0.0) t = std::clamp(-q1 / q2, 0.0, 1.0);
  double fmin = q2 * t * t + 2.0 * q1 * t + q0;
  return fmin <= 1.0 + tol;
}

double clipped_length(const Quadric& q, const Vec3& a, const Vec3& b) {
  double q2, q1, q0;
  segment_quadratic(q, a, b, q2, q1, q0);
  double len = distance(a, b);
  if (q2 <= 0.0) {
    // Degenerate direction (zero-length segment or flat form): constant f.
    return q0 <= 1.0 ? len : 0.0;
  }
  double disc = q1 * q1 - q2 * (q0 - 1.0);
  if (disc <= 0.0) return 0.0;
  double root = std::sqrt(disc);
  double t0 = (-q1 - root) / q2;
  double t1 = (-q1 + root) / q2;
  double inside = std::min(t1, 1.0) - std::max(t0, 0.0);
  return inside > 0.0 ? inside * len : 0.0;
}

namespace {

// Khachiyan's coordinate ascent in dimension dim over the lifted points
// Q = [Y; 1]. Returns the optimal barycentric weights.
Eigen::VectorXd khachiyan_weights(const Eigen::MatrixXd& Y, const MveeParams& params) {
  const int dim = static_cast<int>(Y.rows());
  const int m = static_cast<int>(Y.cols());
  const double target = dim + 1.0;
  Eigen::MatrixXd Q(dim + 1, m);
  Q.topRows(dim) = Y;
  Q.row(dim).setOnes();
  Eigen::VectorXd u = Eigen::VectorXd::Constant(m, 1.0 / m);
  for (int iter = 0; iter < params.max_iter; ++iter) {
    Eigen::MatrixXd X = Q * u.asDiagonal() * Q.transpose();
    Eigen::MatrixXd E = X.ldlt().solve(Q);
    Eigen::VectorXd M = (Q.array() * E.array()).colwise().sum();
    int j = 0;
    double kappa = M.maxCoeff(&j);
    if (!(kappa > target * (1.0 + params.eps))) break;
    double alpha = (kappa - target) / (target * (kappa - 1.0));
    if (!(alpha > 0.0) || !std::isfinite(alpha)) break;
    u *= 1.0 - alpha;
    u(j) += alpha;
  }
  return u;
}

}  // namespace

Quadric mvee(const std::vector<Vec3>& points, const MveeParams& params) {
  const int n = static_cast<int>(points.size());
  if (n == 0) throw std::invalid_argument("mvee needs at least one point");
  if (params.min_thickness < 0.0)
    throw std::invalid_argument("min_thickness must be non-negative");

  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  Eigen::MatrixXd D(3, n);
  for (int i = 0; i < n; ++i) {
    D.col(i) = Eigen::Vector3d(points[i].x, points[i].y, points[i].z);
    centroid += D.col(i);
  }
  centroid /= n;
  D.colwise() -= centroid;

  // Work in the affine hull of the points: flat point sets would make the
  // lifted scatter matrix singular.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullU);
  Eigen::VectorXd sv = svd.singularValues();
  int rank = 0;
  if (sv.size() > 0 && sv(0) > 0.0) {
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) > sv(0) * 1e-9) ++rank;
  }
  Eigen::Matrix3d U = svd.matrixU();

  Eigen::Vector3d center = centroid;
  Eigen::Matrix3d form = Eigen::Matrix3d::Zero();

  if (rank > 0) {
    Eigen::MatrixXd Y = U.leftCols(rank).transpose() * D;
    Eigen::VectorXd u = khachiyan_weights(Y, params);
    Eigen::VectorXd c = Y * u;
    Eigen::MatrixXd S =
        Y * u.asDiagonal() * Y.transpose() - c * c.transpose();
    Eigen::MatrixXd A = S.inverse() / rank;
    center = centroid + U.leftCols(rank) * c;
    form += U.leftCols(rank) * A * U.leftCols(rank).transpose();
  }
  if (rank < 3) {
    double t = params.min_thickness > 0.0 ? params.min_thickness : 1e-9;
    for (int k = rank; k < 3; ++k)
      form += U.col(k) * U.col(k).transpose() / (t * t);
  }

  Quadric q{{center(0), center(1), center(2)}, from_eigen(form)};

  // Khachiyan only bounds point values by 1 + O(eps); rescale so the furthest
  // point lands exactly on the boundary. Skipped for coincident point sets,
  // where every value is ~0 and rescaling would blow the ball up.
  double worst = 0.0;
  for (const Vec3& p : points) worst = std::max(worst, q.value(p));
  if (worst > 0.5) q.form = q.form.scaled(1.0 / worst);
  return q;
}

double node_angle(const Vec3& prev, const Vec3& at, const Vec3& next) {
  Vec3 p = prev - at;
  Vec3 n = next - at;
  if (norm(p) == 0.0 || norm(n) == 0.0)
    throw std::invalid_argument("node_angle: coincident points give a zero-length arm");
  double ang = std::atan2(norm(cross(p, n)), dot(p, n));
  return ang * 180.0 / kPi;
}

namespace {

// Area of disc (origin, radius r) cut to the quadrant {X <= x, Y <= y}.
double corner_area(double x, double y, double r) {
  auto g = [r](double t) {  // antiderivative of the half-width sqrt(r^2 - t^2)
    t = std::clamp(t, -r, r);
    double s = std::sqrt(std::max(0.0, r * r - t * t));
    return 0.5 * (t * s + r * r * std::asin(std::clamp(t / r, -1.0, 1.0)));
  };
  double xc = std::clamp(x, -r, r);
  double yc = std::clamp(y, -r, r);
  double tau = std::sqrt(std::max(0.0, r * r - xc * xc));
  double area = 0.0;
  // Band where the X <= x cut is active: width xc + sqrt(r^2 - t^2).
  double mid_hi = std::min(yc, tau);
  if (mid_hi > -tau) area += xc * (mid_hi + tau) + g(mid_hi) - g(-tau);
  if (xc > 0.0) {
    // Bands where the disc is narrower than the cut: full chord width.
    double low_hi = std::min(yc, -tau);
    if (low_hi > -r) area += 2.0 * (g(low_hi) - g(-r));
    if (yc > tau) area += 2.0 * (g(yc) - g(tau));
  }
  return area;
}

}  // namespace

double circle_rect_area(double cx, double cy, double r, double x0, double x1, double y0,
                        double y1) {
  if (r <= 0.0 || x1 <= x0 || y1 <= y0) return 0.0;
  double area = corner_area(x1 - cx, y1 - cy, r) - corner_area(x0 - cx, y1 - cy, r) -
                corner_area(x1 - cx, y0 - cy, r) + corner_area(x0 - cx, y0 - cy, r);
  return std::max(0.0, area);
}

namespace {

struct GaussLegendre {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
  explicit GaussLegendre(int n) : x(n), w(n) {
    for (int i = 0; i < (n + 1) / 2; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
          double p2 = p1;
          p1 = p0;
          p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
        }
        pp = n * (z * p0 - p1) / (z * z - 1.0);
        double z1 = z;
        z = z1 - p0 / pp;
        if (std::abs(z - z1) < 1e-15) break;
      }
      x[i] = -z;
      x[n - 1 - i] = z;
      w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
  }
};

}  // namespace

double sphere_box_volume(const Vec3& center, double radius, const Box3& box) {
  if (radius <= 0.0) return 0.0;
  const Vec3& lo = box.lo;
  const Vec3& hi = box.hi;
  if (center.x + radius <= lo.x || center.x - radius >= hi.x ||
      center.y + radius <= lo.y || center.y - radius >= hi.y ||
      center.z + radius <= lo.z || center.z - radius >= hi.z)
    return 0.0;
  if (center.x - radius >= lo.x && center.x + radius <= hi.x &&
      center.y - radius >= lo.y && center.y + radius <= hi.y &&
      center.z - radius >= lo.z && center.z + radius <= hi.z)
    return 4.0 / 3.0 * kPi * radius * radius * radius;

  double z0 = std::max(lo.z, center.z - radius);
  double z1 = std::min(hi.z, center.z + radius);
  if (z1 <= z0) return 0.0;
  static const GaussLegendre gl(64);
  double mid = 0.5 * (z0 + z1);
  double half = 0.5 * (z1 - z0);
  double total = 0.0;
  for (size_t i = 0; i < gl.x.size(); ++i) {
    double z = mid + half * gl.x[i];
    double dz = z - center.z;
    double rr = std::sqrt(std::max(0.0, radius * radius - dz * dz));
    total += gl.w[i] * circle_rect_area(center.x, center.y, rr, lo.x, hi.x, lo.y, hi.y);
  }
  return half * total;
}

CylinderClipResult cylinder_box_volume(const Vec3& a, const Vec3& b, double radius,
                                       const Box3& box, std::uint64_t seed,
                                       int samples) {
  CylinderClipResult out;
  double length = distance(a, b);
  if (radius <= 0.0 || length == 0.0) {
    out.exact = true;
    return out;
  }
  double full = kPi * radius * radius * length;

  Vec3 clo{std::min(a.x, b.x) - radius, std::min(a.y, b.y) - radius,
           std::min(a.z, b.z) - radius};
  Vec3 chi{std::max(a.x, b.x) + radius, std::max(a.y, b.y) + radius,
           std::max(a.z, b.z) + radius};
  if (clo.x >= box.lo.x && chi.x <= box.hi.x && clo.y >= box.lo.y && chi.y <= box.hi.y &&
      clo.z >= box.lo.z && chi.z <= box.hi.z) {
    out.volume = full;
    out.exact = true;
    return out;
  }
  if (chi.x <= box.lo.x || clo.x >= box.hi.x || chi.y <= box.lo.y || clo.y >= box.hi.y ||
      chi.z <= box.lo.z || clo.z >= box.hi.z) {
    out.exact = true;
    return out;
  }

  Vec3 axis = (b - a) / length;
  Vec3 pick = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 e1 = cross(axis, pick);
  e1 = e1 / norm(e1);
  Vec3 e2 = cross(axis, e1);

  if (samples < 1) throw std::invalid_argument("sample count must be positive");
  Rng rng(seed);
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    double t = rng.uniform() * length;
    double rho = radius * std::sqrt(rng.uniform());
    double phi = 2.0 * kPi * rng.uniform();
    Vec3 p = a + axis * t + e1 * (rho * std::cos(phi)) + e2 * (rho * std::sin(phi));
    if (box.contains(p)) ++hits;
  }
  out.volume = full * hits / samples;
  return out;
}

}  // namespace graphtic

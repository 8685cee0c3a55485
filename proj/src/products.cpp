#include "geoblock/products.hpp"

#include <cmath>

namespace geoblock {

double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return Vec3{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

double angle_between(const Vec3& a, const Vec3& b) {
  Vec3 c = cross(a, b);
  return std::atan2(std::sqrt(dot(c, c)), dot(a, b));
}

Vec3 SphereModel::north() { return Vec3{0.0, 0.0, 1.0}; }
Vec3 SphereModel::south() { return Vec3{0.0, 0.0, -1.0}; }

std::vector<SphereLoopGeodesic> SphereModel::enumerate(const Point& a, const Point& b,
                                                       double l_max) const {
  if (distance(a, north()) > kCoincideTol || distance(b, north()) > kCoincideTol) {
    throw std::invalid_argument("sphere factor supports the pole pair (p, p) only");
  }
  std::vector<SphereLoopGeodesic> out;
  for (int k = 1; kTwoPi * k <= l_max; ++k) {
    out.push_back(SphereLoopGeodesic{representative_psi, k});
  }
  return out;
}

Vec3 SphereModel::evaluate(const Geodesic& g, double u) const {
  double c = 2.0 * g.k * u;  // position in half turns
  double r = std::fmod(c, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0) return north();
  if (r == 1.0) return south();
  double angle = r * kPi;
  Vec3 w{std::cos(g.psi), std::sin(g.psi), 0.0};
  return Vec3{w.x * std::sin(angle), w.y * std::sin(angle), std::cos(angle)};
}

std::vector<double> SphereModel::hit_times(const Geodesic& g, const Point& b,
                                           double eps) const {
  std::vector<double> out;
  const int grid = 2 * g.k;
  if (distance(b, north()) <= eps) {
    for (int j = 2; j < grid; j += 2) out.push_back(static_cast<double>(j) / grid);
    return out;
  }
  if (distance(b, south()) <= eps) {
    for (int j = 1; j < grid; j += 2) out.push_back(static_cast<double>(j) / grid);
    return out;
  }
  Vec3 w{std::cos(g.psi), std::sin(g.psi), 0.0};
  Vec3 normal{-std::sin(g.psi), std::cos(g.psi), 0.0};
  double off = std::asin(std::clamp(std::fabs(dot(b, normal)), 0.0, 1.0));
  if (off > eps) return out;
  double phi = std::atan2(dot(b, w), b.z);
  if (phi < 0.0) phi += kTwoPi;
  for (int j = 0; j < g.k; ++j) {
    double u = (phi + kTwoPi * j) / (kTwoPi * g.k);
    if (u > 1e-12 && u < 1.0 - 1e-12) out.push_back(u);
  }
  std::sort(out.begin(), out.end());
  return out;
}

double SphereModel::distance(const Point& a, const Point& b) const {
  return angle_between(a, b);
}

double SphereModel::length(const Geodesic& g) const { return kTwoPi * g.k; }

SphereLoopGeodesic find_clean_great_circle(const std::vector<Vec3>& candidates) {
  std::vector<double> excluded;
  for (const Vec3& b : candidates) {
    double off_poles = std::min(angle_between(b, SphereModel::north()),
                                angle_between(b, SphereModel::south()));
    if (off_poles <= 1e-12) continue;
    double lambda = std::atan2(b.y, b.x);
    lambda = lambda - kPi * std::floor(lambda / kPi);  // mod pi
    excluded.push_back(lambda);
  }
  std::sort(excluded.begin(), excluded.end());
  double best_psi = kPi / 2.0;
  double best_gap = -1.0;
  if (excluded.empty()) return SphereLoopGeodesic{0.0, 1};
  for (std::size_t i = 0; i < excluded.size(); ++i) {
    double lo = excluded[i];
    double hi = i + 1 < excluded.size() ? excluded[i + 1] : excluded[0] + kPi;
    if (hi - lo > best_gap) {
      best_gap = hi - lo;
      best_psi = wrap_angle((lo + hi) / 2.0);
    }
  }
  return SphereLoopGeodesic{best_psi, 1};
}

std::vector<TorusModel::Geodesic> TorusModel::enumerate(const Point& a, const Point& b,
                                                        double l_max) const {
  if (!(l_max > 0.0)) throw std::invalid_argument("L_max must be positive");
  std::vector<Geodesic> out;
  const double pt = lattice_.period_t;
  const double pth = lattice_.period_theta;
  const int m_lo = static_cast<int>(std::ceil((a.t - l_max - b.t) / pt));
  const int m_hi = static_cast<int>(std::floor((a.t + l_max - b.t) / pt));
  const int n_lo = static_cast<int>(std::ceil((a.theta - l_max - b.theta) / pth));
  const int n_hi = static_cast<int>(std::floor((a.theta + l_max - b.theta) / pth));
  for (int m = m_lo; m <= m_hi; ++m) {
    for (int n = n_lo; n <= n_hi; ++n) {
      PlanePoint lift{b.t + pt * m, b.theta + pth * n};
      double len = std::hypot(lift.t - a.t, lift.theta - a.theta);
      if (len <= 1e-12 || len > l_max) continue;
      Geodesic g{a, lift, len, m, n, true};
      // primitive iff no lattice translate of an endpoint sits strictly inside
      for (const PlanePoint& e : {a, b}) {
        auto hits = segment_orbit_hits(a, lift, e, lattice_, 1e-9);
        for (double u : hits) {
          if (u > 1e-9 && u < 1.0 - 1e-9) g.primitive = false;
        }
      }
      out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end(), [](const Geodesic& x, const Geodesic& y) {
    if (x.len != y.len) return x.len < y.len;
    if (x.m != y.m) return x.m < y.m;
    return x.n < y.n;
  });
  return out;
}

PlanePoint TorusModel::evaluate(const Geodesic& g, double u) const {
  PlanePoint p{g.start.t + u * (g.target_lift.t - g.start.t),
               g.start.theta + u * (g.target_lift.theta - g.start.theta)};
  return lattice_.reduce(p);
}

std::vector<double> TorusModel::hit_times(const Geodesic& g, const Point& b,
                                          double eps) const {
  std::vector<double> out;
  for (double u : segment_orbit_hits(g.start, g.target_lift, b, lattice_, eps)) {
    if (u > 1e-12 && u < 1.0 - 1e-12) out.push_back(u);
  }
  return out;
}

double TorusModel::distance(const Point& a, const Point& b) const {
  PlanePoint ra = lattice_.reduce(a);
  PlanePoint rb = lattice_.reduce(b);
  double best = kInfinity;
  for (int m = -1; m <= 1; ++m) {
    for (int n = -1; n <= 1; ++n) {
      best = std::min(best, std::hypot(ra.t - rb.t + lattice_.period_t * m,
                                       ra.theta - rb.theta + lattice_.period_theta * n));
    }
  }
  return best;
}

std::vector<PlanePoint> TorusModel::midpoint_set(const Point& a, const Point& b) const {
  PlanePoint mid{(a.t + b.t) / 2.0, (a.theta + b.theta) / 2.0};
  std::vector<PlanePoint> out;
  for (const PlanePoint& off : {PlanePoint{0.0, 0.0}, PlanePoint{params_.l, 0.0},
                                PlanePoint{0.0, kPi}, PlanePoint{params_.l, kPi}}) {
    out.push_back(lattice_.reduce(PlanePoint{mid.t + off.t, mid.theta + off.theta}));
  }
  return out;
}

std::vector<NGeodesic> NModel::enumerate(const Point& a, const Point& b,
                                         double l_max) const {
  return geodesics_between(as_cyl(a), as_cyl(b), l_max, params_);
}

}  // namespace geoblock

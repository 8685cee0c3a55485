#pragma once

// Independent oracles used by the test suites. Everything in this header is
// deliberately written against the definitions only (brute force scans,
// embedded 3D sphere evaluation), never against the library code paths it
// checks.

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "geoblock/flat_model.hpp"
#include "geoblock/geometry.hpp"

namespace oracles {

using geoblock::CylPoint;
using geoblock::kPi;
using geoblock::kTwoPi;
using geoblock::PlanePoint;
using geoblock::SurfaceParams;

struct BruteLift {
  bool chat = false;
  int m = 0;
  int n = 0;
  PlanePoint point;
  double distance = 0.0;
};

// Exhaustive double loop over |m|, |n| <= bound in both classes.
inline std::vector<BruteLift> brute_lifts(const CylPoint& x2, const PlanePoint& base,
                                          double l_max, const SurfaceParams& params,
                                          int bound) {
  std::vector<BruteLift> out;
  for (int chat = 0; chat <= 1; ++chat) {
    for (int m = -bound; m <= bound; ++m) {
      for (int n = -bound; n <= bound; ++n) {
        double t = (chat ? -x2.t : x2.t) + 2.0 * params.l * m;
        double th = (chat ? x2.theta + kPi : x2.theta) + kTwoPi * n;
        double d = std::hypot(t - base.t, th - base.theta);
        if (d > 1e-12 && d <= l_max) {
          out.push_back(BruteLift{chat != 0, m, n, PlanePoint{t, th}, d});
        }
      }
    }
  }
  return out;
}

// Bound from the enumeration-completeness property.
inline int brute_bound(double l_max, const SurfaceParams& params) {
  return static_cast<int>(std::ceil(l_max / (2.0 * params.l)) +
                          std::ceil(l_max / kTwoPi)) + 1;
}

// Fold oracle: walk the t coordinate back into [0, l] by explicit seam
// reflections, shifting theta by pi at every seam, per the gluing rules
// (0,th) ~ (-0,th+pi) and (l,th) ~ (-l,th+pi).
inline CylPoint fold_by_seam_tracing(PlanePoint p, const SurfaceParams& params) {
  double t = p.t;
  double th = p.theta;
  int guard = 0;
  while ((t < 0.0 || t > params.l) && ++guard < 100000) {
    if (t < 0.0) {
      t = -t;
      th += kPi;
    } else {
      t = 2.0 * params.l - t;
      th += kPi;
    }
  }
  return CylPoint{t, geoblock::wrap_angle(th)};
}

// Embedded 3D evaluation of a half-great-circle cap crossing. The equator is
// the unit circle in the z = 0 plane; depth is arcsin(z).
struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 arc3d(double entry_longitude, double alpha, int theta_sign, double s) {
  Vec3 a{std::cos(entry_longitude), std::sin(entry_longitude), 0.0};
  Vec3 e_phi{-std::sin(entry_longitude), std::cos(entry_longitude), 0.0};
  Vec3 u{theta_sign * std::cos(alpha) * e_phi.x, theta_sign * std::cos(alpha) * e_phi.y,
         std::sin(alpha)};
  return Vec3{a.x * std::cos(s) + u.x * std::sin(s), a.y * std::cos(s) + u.y * std::sin(s),
              a.z * std::cos(s) + u.z * std::sin(s)};
}

inline double arc3d_depth(double entry_longitude, double alpha, int theta_sign, double s) {
  return std::asin(std::clamp(arc3d(entry_longitude, alpha, theta_sign, s).z, -1.0, 1.0));
}

inline double arc3d_longitude(double entry_longitude, double alpha, int theta_sign, double s) {
  Vec3 p = arc3d(entry_longitude, alpha, theta_sign, s);
  return geoblock::wrap_angle(std::atan2(p.y, p.x));
}

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64{seed}; }

inline CylPoint random_interior(std::mt19937_64& gen, const SurfaceParams& params,
                                double margin = 0.05) {
  std::uniform_real_distribution<double> ut(margin * params.l, (1.0 - margin) * params.l);
  std::uniform_real_distribution<double> uth(0.0, kTwoPi);
  return CylPoint{ut(gen), uth(gen)};
}

}  // namespace oracles

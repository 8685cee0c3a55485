#include "geoblock/geometry.hpp"

#include <algorithm>

namespace geoblock {

double wrap_angle(double a) {
  double r = a - kTwoPi * std::floor(a / kTwoPi);
  if (r >= kTwoPi) r -= kTwoPi;
  if (r < 0.0) r += kTwoPi;
  return r;
}

double circle_distance(double a, double b) {
  double d = std::fabs(wrap_angle(a) - wrap_angle(b));
  return std::min(d, kTwoPi - d);
}

void validate_params(const SurfaceParams& params) {
  if (!(params.l > 0.0) || !std::isfinite(params.l)) {
    throw std::invalid_argument("cylinder length must be positive and finite");
  }
}

NPoint NPoint::cylinder(double t, double theta) {
  NPoint p;
  p.region = Region::Cyl;
  p.t = t;
  p.theta = wrap_angle(theta);
  return p;
}

NPoint NPoint::cap(Region cap, double longitude, double depth) {
  if (cap == Region::Cyl) throw std::invalid_argument("cap() needs a cap region");
  NPoint p;
  p.region = cap;
  p.theta = wrap_angle(longitude);
  p.depth = std::clamp(depth, 0.0, kPi / 2.0);
  return p;
}

bool is_interior_cyl(const NPoint& p, const SurfaceParams& params) {
  return p.region == Region::Cyl && p.t > 0.0 && p.t < params.l;
}

CylPoint as_cyl(const NPoint& p) {
  if (p.region != Region::Cyl) throw std::invalid_argument("point is not in the cylinder region");
  return CylPoint{p.t, p.theta};
}

NPoint to_npoint(const CylPoint& p) { return NPoint::cylinder(p.t, p.theta); }

void require_interior(const CylPoint& p, const SurfaceParams& params) {
  validate_params(params);
  if (!(p.t > 0.0 && p.t < params.l)) {
    throw std::invalid_argument("point must lie in the open cylinder (0 < t < l)");
  }
}

namespace {

double cap_equator_offset(const NPoint& p, Region cap, const SurfaceParams& params) {
  // Distance of a point from the given cap's equator, or +inf when the point
  // cannot be near it.
  if (p.region == cap) return p.depth;
  if (p.region == Region::Cyl) return cap == Region::Cap0 ? p.t : params.l - p.t;
  return kInfinity;
}

}  // namespace

double surface_distance(const NPoint& p, const NPoint& q,
                        const SurfaceParams& params, double band) {
  if (p.region == Region::Cyl && q.region == Region::Cyl) {
    return std::hypot(p.t - q.t, circle_distance(p.theta, q.theta));
  }
  if (p.region == q.region) {
    // Haversine with depth as latitude; stable for nearby points.
    double sd = std::sin((p.depth - q.depth) / 2.0);
    double sl = std::sin(std::remainder(p.theta - q.theta, kTwoPi) / 2.0);
    double h = sd * sd + std::cos(p.depth) * std::cos(q.depth) * sl * sl;
    return 2.0 * std::asin(std::min(1.0, std::sqrt(h)));
  }
  for (Region cap : {Region::Cap0, Region::CapL}) {
    double dp = cap_equator_offset(p, cap, params);
    double dq = cap_equator_offset(q, cap, params);
    if (dp <= band && dq <= band) {
      return std::hypot(dp + dq, circle_distance(p.theta, q.theta));
    }
  }
  return kInfinity;
}

}  // namespace geoblock

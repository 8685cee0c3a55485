#include "geoblock/flat_model.hpp"

#include <algorithm>
#include <cmath>

namespace geoblock {

Lattice Lattice::from(const SurfaceParams& params) {
  validate_params(params);
  return Lattice{2.0 * params.l, kTwoPi};
}

PlanePoint Lattice::reduce(const PlanePoint& p) const {
  double t = p.t - period_t * std::floor(p.t / period_t);
  if (t >= period_t) t -= period_t;
  if (t < 0.0) t += period_t;
  double th = p.theta - period_theta * std::floor(p.theta / period_theta);
  if (th >= period_theta) th -= period_theta;
  if (th < 0.0) th += period_theta;
  return PlanePoint{t, th};
}

bool Lattice::congruent(const PlanePoint& a, const PlanePoint& b, double tol) const {
  double dt = std::remainder(a.t - b.t, period_t);
  double dth = std::remainder(a.theta - b.theta, period_theta);
  return std::fabs(dt) <= tol && std::fabs(dth) <= tol;
}

NPoint fold_to_n(const PlanePoint& p, const SurfaceParams& params) {
  validate_params(params);
  const double two_l = 2.0 * params.l;
  double t = p.t - two_l * std::floor(p.t / two_l);
  if (t >= two_l) t -= two_l;
  if (t < 0.0) t += two_l;
  if (t <= params.l) return NPoint::cylinder(t, p.theta);
  return NPoint::cylinder(two_l - t, p.theta + kPi);
}

PlanePoint lift_point(const CylPoint& x, const LiftClass& cls, const SurfaceParams& params) {
  const double two_l = 2.0 * params.l;
  if (cls.tag == LiftTag::C) {
    return PlanePoint{x.t + two_l * cls.m, x.theta + kTwoPi * cls.n};
  }
  return PlanePoint{-x.t + two_l * cls.m, x.theta + kPi + kTwoPi * cls.n};
}

namespace {

constexpr double kZeroLength = 1e-12;

void collect_lifts(std::vector<Lift>& out, const CylPoint& x2, LiftTag tag,
                   const PlanePoint& base, double l_max, const SurfaceParams& params) {
  const double two_l = 2.0 * params.l;
  const double t_anchor = (tag == LiftTag::C) ? x2.t : -x2.t;
  const double th_anchor = (tag == LiftTag::C) ? x2.theta : x2.theta + kPi;
  const int m_lo = static_cast<int>(std::ceil((base.t - l_max - t_anchor) / two_l));
  const int m_hi = static_cast<int>(std::floor((base.t + l_max - t_anchor) / two_l));
  const int n_lo = static_cast<int>(std::ceil((base.theta - l_max - th_anchor) / kTwoPi));
  const int n_hi = static_cast<int>(std::floor((base.theta + l_max - th_anchor) / kTwoPi));
  for (int m = m_lo; m <= m_hi; ++m) {
    for (int n = n_lo; n <= n_hi; ++n) {
      LiftClass cls{tag, m, n};
      PlanePoint p = lift_point(x2, cls, params);
      double d = std::hypot(p.t - base.t, p.theta - base.theta);
      if (d > kZeroLength && d <= l_max) out.push_back(Lift{cls, p, d});
    }
  }
}

}  // namespace

std::vector<Lift> enumerate_lifts(const CylPoint& x2, const PlanePoint& base,
                                  double l_max, const SurfaceParams& params) {
  require_interior(x2, params);
  if (!(l_max > 0.0)) throw std::invalid_argument("L_max must be positive");
  std::vector<Lift> out;
  collect_lifts(out, x2, LiftTag::C, base, l_max, params);
  collect_lifts(out, x2, LiftTag::Chat, base, l_max, params);
  std::sort(out.begin(), out.end(), [](const Lift& a, const Lift& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    if (a.cls.tag != b.cls.tag) return a.cls.tag == LiftTag::C;
    if (a.cls.m != b.cls.m) return a.cls.m < b.cls.m;
    return a.cls.n < b.cls.n;
  });
  return out;
}

std::vector<PlaneSegment> torus_geodesics(const CylPoint& x1, const CylPoint& x2,
                                          double l_max, const SurfaceParams& params) {
  require_interior(x1, params);
  PlanePoint base{x1.t, x1.theta};
  std::vector<PlaneSegment> out;
  for (const Lift& lift : enumerate_lifts(x2, base, l_max, params)) {
    out.push_back(PlaneSegment{base, lift.point, lift.distance, lift.cls});
  }
  return out;
}

std::vector<TorusMidpoint> torus_midpoint_classes(const CylPoint& x1, const CylPoint& x2,
                                                  const SurfaceParams& params) {
  require_interior(x1, params);
  require_interior(x2, params);
  const Lattice lattice = Lattice::from(params);
  const std::array<PlanePoint, 4> offsets{PlanePoint{0.0, 0.0},
                                          PlanePoint{params.l, 0.0},
                                          PlanePoint{0.0, kPi},
                                          PlanePoint{params.l, kPi}};
  std::vector<TorusMidpoint> out;
  constexpr double kMergeTol = 1e-9;
  for (LiftTag tag : {LiftTag::C, LiftTag::Chat}) {
    PlanePoint lift = lift_point(x2, LiftClass{tag, 0, 0}, params);
    PlanePoint mid0{(x1.t + lift.t) / 2.0, (x1.theta + lift.theta) / 2.0};
    for (int k = 0; k < 4; ++k) {
      PlanePoint residue =
          lattice.reduce(PlanePoint{mid0.t + offsets[k].t, mid0.theta + offsets[k].theta});
      bool dup = false;
      for (const TorusMidpoint& seen : out) {
        if (lattice.congruent(seen.residue, residue, kMergeTol)) {
          dup = true;
          break;
        }
      }
      if (!dup) out.push_back(TorusMidpoint{tag, k, residue});
    }
  }
  return out;
}

std::vector<double> segment_orbit_hits(const PlanePoint& a, const PlanePoint& b,
                                       const PlanePoint& target, const Lattice& lattice,
                                       double eps) {
  std::vector<double> out;
  const double dt = b.t - a.t;
  const double dth = b.theta - a.theta;
  const double len2 = dt * dt + dth * dth;
  if (len2 <= 0.0) return out;
  const double t_lo = std::min(a.t, b.t) - eps;
  const double t_hi = std::max(a.t, b.t) + eps;
  const double th_lo = std::min(a.theta, b.theta) - eps;
  const double th_hi = std::max(a.theta, b.theta) + eps;
  const int m_lo = static_cast<int>(std::ceil((t_lo - target.t) / lattice.period_t));
  const int m_hi = static_cast<int>(std::floor((t_hi - target.t) / lattice.period_t));
  const int n_lo = static_cast<int>(std::ceil((th_lo - target.theta) / lattice.period_theta));
  const int n_hi = static_cast<int>(std::floor((th_hi - target.theta) / lattice.period_theta));
  constexpr double kParamTol = 1e-12;
  for (int m = m_lo; m <= m_hi; ++m) {
    for (int n = n_lo; n <= n_hi; ++n) {
      double px = target.t + lattice.period_t * m;
      double py = target.theta + lattice.period_theta * n;
      double u = ((px - a.t) * dt + (py - a.theta) * dth) / len2;
      if (u < -kParamTol || u > 1.0 + kParamTol) continue;
      double cu = std::clamp(u, 0.0, 1.0);
      double dist = std::hypot(px - (a.t + cu * dt), py - (a.theta + cu * dth));
      if (dist <= eps) out.push_back(cu);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace geoblock

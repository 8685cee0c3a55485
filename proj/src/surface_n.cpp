#include "geoblock/surface_n.hpp"

#include <algorithm>
#include <cmath>

namespace geoblock {

namespace {

constexpr double kDepthFloor = 1e-13;

int sign_or_one(double x) { return x < 0.0 ? -1 : 1; }

}  // namespace

double arc_depth(const CapArc& arc, double s) {
  return std::asin(std::clamp(std::sin(s) * std::sin(arc.alpha), -1.0, 1.0));
}

double arc_longitude(const CapArc& arc, double s) {
  double swing = std::atan2(std::cos(arc.alpha) * std::sin(s), std::cos(s));
  return wrap_angle(arc.entry_longitude + arc.theta_sign * swing);
}

SurfaceVec arc_tangent(const CapArc& arc, double s) {
  double cd = std::cos(arc_depth(arc, s));
  if (cd < 1e-15) return SurfaceVec{static_cast<double>(sign_or_one(std::cos(s))), 0.0};
  return SurfaceVec{std::sin(arc.alpha) * std::cos(s) / cd,
                    arc.theta_sign * std::cos(arc.alpha) / cd};
}

NPoint eval_pieces(const std::vector<GeoPiece>& pieces, double s,
                   const SurfaceParams& params) {
  if (pieces.empty()) throw std::invalid_argument("empty path");
  std::size_t lo = 0, hi = pieces.size();
  while (hi - lo > 1) {
    std::size_t mid = (lo + hi) / 2;
    if (pieces[mid].s_begin <= s) lo = mid; else hi = mid;
  }
  const GeoPiece& piece = pieces[lo];
  double ds = std::clamp(s - piece.s_begin, 0.0, piece.length);
  if (std::holds_alternative<FlatPiece>(piece.part)) {
    const FlatPiece& f = std::get<FlatPiece>(piece.part);
    double w = piece.length > 0.0 ? ds / piece.length : 0.0;
    PlanePoint p{f.a.t + w * (f.b.t - f.a.t), f.a.theta + w * (f.b.theta - f.a.theta)};
    return fold_to_n(p, params);
  }
  const CapArc& arc = std::get<CapArc>(piece.part);
  double s_arc = piece.arc_s0 + ds;
  double depth = arc_depth(arc, s_arc);
  double longitude = arc_longitude(arc, s_arc);
  if (depth < kDepthFloor) {
    return NPoint::cylinder(arc.cap == Region::Cap0 ? 0.0 : params.l, longitude);
  }
  return NPoint::cap(arc.cap, longitude, depth);
}

int NGeodesic::cap_arc_count() const {
  int n = 0;
  for (const GeoPiece& p : pieces) n += std::holds_alternative<CapArc>(p.part) ? 1 : 0;
  return n;
}

NPoint NGeodesic::at(double u) const { return point_at(*this, u); }

NPoint point_at(const NGeodesic& g, double u) {
  if (u < -1e-12 || u > 1.0 + 1e-12) throw std::out_of_range("parameter outside [0,1]");
  return eval_pieces(g.pieces, std::clamp(u, 0.0, 1.0) * g.n_length, g.params);
}

namespace {

// Walk the plane ray origin + tau * dir, inserting a cap arc at every seam
// crossing (plane lines t in lZ). Stops at plane arclength `plane_limit` or
// surface arclength `surface_budget`, whichever comes first.
void walk_ray(std::vector<GeoPiece>& pieces, double& s_cum, PlanePoint origin,
              double dir_t, double dir_th, double plane_limit, double surface_budget,
              const SurfaceParams& params) {
  const double l = params.l;
  PlanePoint pos = origin;
  double tau = 0.0;
  double alpha = std::asin(std::clamp(std::fabs(dir_t), 0.0, 1.0));
  int theta_sign = sign_or_one(dir_th == 0.0 ? 1.0 : dir_th);
  while (surface_budget > 1e-15 && plane_limit - tau > 1e-15) {
    double tau_seam = kInfinity;
    int k_seam = 0;
    if (dir_t > 0.0) {
      k_seam = static_cast<int>(std::floor(pos.t / l + 1e-12)) + 1;
      tau_seam = (k_seam * l - pos.t) / dir_t;
    } else if (dir_t < 0.0) {
      k_seam = static_cast<int>(std::ceil(pos.t / l - 1e-12)) - 1;
      tau_seam = (k_seam * l - pos.t) / dir_t;
    }
    double step = std::min({tau_seam, plane_limit - tau, surface_budget});
    if (step > 0.0) {
      PlanePoint next{pos.t + step * dir_t, pos.theta + step * dir_th};
      if (step >= tau_seam) next.t = k_seam * l;  // land exactly on the seam
      pieces.push_back(GeoPiece{FlatPiece{pos, next}, step, s_cum, 0.0});
      s_cum += step;
      surface_budget -= step;
      tau += step;
      pos = next;
    }
    if (step < tau_seam || surface_budget <= 1e-15) break;
    // Seam crossed: insert the cap arc. The entry longitude folds with the
    // chart of the incoming strip (theta + pi on odd strips).
    int strip_in = (dir_t > 0.0) ? k_seam - 1 : k_seam;
    bool odd = ((strip_in % 2) + 2) % 2 == 1;
    CapArc arc;
    arc.cap = (((k_seam % 2) + 2) % 2 == 0) ? Region::Cap0 : Region::CapL;
    arc.entry_longitude = wrap_angle(pos.theta + (odd ? kPi : 0.0));
    arc.alpha = alpha;
    arc.theta_sign = theta_sign;
    double alen = std::min(kPi, surface_budget);
    pieces.push_back(GeoPiece{arc, alen, s_cum, 0.0});
    s_cum += alen;
    surface_budget -= alen;
    if (alen < kPi) break;  // budget ran out inside the cap
  }
}

}  // namespace

NGeodesic build_path(const PlaneSegment& seg, const SurfaceParams& params) {
  validate_params(params);
  NPoint p0 = fold_to_n(seg.start, params);
  NPoint p1 = fold_to_n(seg.end, params);
  if (!is_interior_cyl(p0, params) || !is_interior_cyl(p1, params)) {
    throw std::domain_error("segment endpoint folds onto a cap equator");
  }
  double dt = seg.end.t - seg.start.t;
  double dth = seg.end.theta - seg.start.theta;
  double len = std::hypot(dt, dth);
  if (!(len > 0.0)) throw std::invalid_argument("zero-length segment");

  NGeodesic g;
  g.params = params;
  g.source = seg;
  g.source.flat_length = len;
  double s_cum = 0.0;
  walk_ray(g.pieces, s_cum, seg.start, dt / len, dth / len, len, kInfinity, params);
  g.n_length = s_cum;
  return g;
}

GammaInfo gamma_info(const CylPoint& x1, const CylPoint& x2, int index,
                     const SurfaceParams& params) {
  require_interior(x1, params);
  require_interior(x2, params);
  if (index < 0) throw std::invalid_argument("winding index must be >= 0");
  GammaInfo info;
  info.x1 = x1;
  info.x2 = x2;
  info.index = index;
  double dtheta = kTwoPi * index + x2.theta + kPi - x1.theta;
  info.flat_length = std::hypot(x1.t + x2.t, dtheta);
  info.n_length = info.flat_length + kPi;
  info.cap_entry_u = (1.0 - kPi / info.n_length) * (x1.t / (x1.t + x2.t));
  return info;
}

namespace {

bool segment_passes_point(const PlaneSegment& seg, const CylPoint& e,
                          const SurfaceParams& params) {
  const double dt = seg.end.t - seg.start.t;
  const double dth = seg.end.theta - seg.start.theta;
  const double len2 = dt * dt + dth * dth;
  const double two_l = 2.0 * params.l;
  constexpr double kDistTol = 1e-9;
  constexpr double kParamTol = 1e-12;
  for (LiftTag tag : {LiftTag::C, LiftTag::Chat}) {
    double t_anchor = (tag == LiftTag::C) ? e.t : -e.t;
    double th_anchor = (tag == LiftTag::C) ? e.theta : e.theta + kPi;
    double t_lo = std::min(seg.start.t, seg.end.t) - kDistTol;
    double t_hi = std::max(seg.start.t, seg.end.t) + kDistTol;
    double th_lo = std::min(seg.start.theta, seg.end.theta) - kDistTol;
    double th_hi = std::max(seg.start.theta, seg.end.theta) + kDistTol;
    int m_lo = static_cast<int>(std::ceil((t_lo - t_anchor) / two_l));
    int m_hi = static_cast<int>(std::floor((t_hi - t_anchor) / two_l));
    int n_lo = static_cast<int>(std::ceil((th_lo - th_anchor) / kTwoPi));
    int n_hi = static_cast<int>(std::floor((th_hi - th_anchor) / kTwoPi));
    for (int m = m_lo; m <= m_hi; ++m) {
      for (int n = n_lo; n <= n_hi; ++n) {
        double px = t_anchor + two_l * m;
        double py = th_anchor + kTwoPi * n;
        double u = ((px - seg.start.t) * dt + (py - seg.start.theta) * dth) / len2;
        if (u <= kParamTol || u >= 1.0 - kParamTol) continue;
        double dist = std::hypot(px - (seg.start.t + u * dt), py - (seg.start.theta + u * dth));
        if (dist <= kDistTol) return true;
      }
    }
  }
  return false;
}

}  // namespace

NGeodesic gamma_i(const CylPoint& x1, const CylPoint& x2, int index,
                  const SurfaceParams& params) {
  GammaInfo info = gamma_info(x1, x2, index, params);
  PlaneSegment seg;
  seg.start = PlanePoint{x1.t, x1.theta};
  seg.end = PlanePoint{-x2.t, x1.theta + (x2.theta + kPi - x1.theta) + kTwoPi * index};
  seg.flat_length = info.flat_length;
  seg.target = LiftClass{LiftTag::Chat, 0, index};
  NGeodesic g = build_path(seg, params);
  g.primitive = !segment_passes_point(g.source, x1, params) &&
                !segment_passes_point(g.source, x2, params);
  return g;
}

std::vector<NGeodesic> geodesics_between(const CylPoint& x1, const CylPoint& x2,
                                         double l_max, const SurfaceParams& params) {
  require_interior(x1, params);
  require_interior(x2, params);
  std::vector<NGeodesic> out;
  for (const PlaneSegment& seg : torus_geodesics(x1, x2, l_max, params)) {
    NGeodesic g = build_path(seg, params);
    if (g.n_length > l_max) continue;
    g.primitive = !segment_passes_point(seg, x1, params) &&
                  !segment_passes_point(seg, x2, params);
    out.push_back(std::move(g));
  }
  std::sort(out.begin(), out.end(), [](const NGeodesic& a, const NGeodesic& b) {
    if (a.n_length != b.n_length) return a.n_length < b.n_length;
    const LiftClass& ca = a.source.target;
    const LiftClass& cb = b.source.target;
    if (ca.tag != cb.tag) return ca.tag == LiftTag::C;
    if (ca.m != cb.m) return ca.m < cb.m;
    return ca.n < cb.n;
  });
  return out;
}

std::vector<GeoPiece> n_flow(const NPoint& start, const SurfaceVec& dir,
                             double length, const SurfaceParams& params) {
  validate_params(params);
  if (!(length > 0.0)) throw std::invalid_argument("flow length must be positive");
  double norm = std::hypot(dir.u, dir.v);
  if (!(norm > 0.0)) throw std::invalid_argument("flow direction must be nonzero");
  double du = dir.u / norm, dv = dir.v / norm;

  std::vector<GeoPiece> pieces;
  double s_cum = 0.0;
  double budget = length;
  PlanePoint origin;
  double ray_t = 0.0, ray_th = 0.0;

  if (start.region != Region::Cyl) {
    // Start inside a cap: finish the current great-circle arc first.
    double cosalpha = std::clamp(std::fabs(dv) * std::cos(start.depth), 0.0, 1.0);
    double alpha = std::acos(cosalpha);
    int sign = sign_or_one(dv == 0.0 ? 1.0 : dv);
    double sinalpha = std::sin(alpha);
    double ratio = sinalpha > 0.0 ? std::clamp(std::sin(start.depth) / sinalpha, 0.0, 1.0) : 1.0;
    double s_cur = du >= 0.0 ? std::asin(ratio) : kPi - std::asin(ratio);
    double swing = std::atan2(cosalpha * std::sin(s_cur), std::cos(s_cur));
    CapArc arc;
    arc.cap = start.region;
    arc.entry_longitude = wrap_angle(start.theta - sign * swing);
    arc.alpha = alpha;
    arc.theta_sign = sign;
    double alen = std::min(kPi - s_cur, budget);
    pieces.push_back(GeoPiece{arc, alen, s_cum, s_cur});
    s_cum += alen;
    budget -= alen;
    if (budget <= 1e-15) return pieces;
    double exit_long = arc_longitude(arc, kPi);
    if (start.region == Region::Cap0) {
      origin = PlanePoint{0.0, exit_long};
      ray_t = sinalpha;
    } else {
      origin = PlanePoint{params.l, exit_long};
      ray_t = -sinalpha;
    }
    ray_th = sign * cosalpha;
  } else {
    bool into_cap0 = start.t <= 0.0 && du < 0.0;
    bool into_capl = start.t >= params.l && du > 0.0;
    if (into_cap0 || into_capl) {
      // Start on an equator heading into the cap: full arc first.
      CapArc arc;
      arc.cap = into_cap0 ? Region::Cap0 : Region::CapL;
      arc.entry_longitude = wrap_angle(start.theta);
      arc.alpha = std::asin(std::clamp(std::fabs(du), 0.0, 1.0));
      arc.theta_sign = sign_or_one(dv == 0.0 ? 1.0 : dv);
      double alen = std::min(kPi, budget);
      pieces.push_back(GeoPiece{arc, alen, s_cum, 0.0});
      s_cum += alen;
      budget -= alen;
      if (budget <= 1e-15) return pieces;
      double exit_long = arc_longitude(arc, kPi);
      double sinalpha = std::sin(arc.alpha);
      if (into_cap0) {
        origin = PlanePoint{0.0, exit_long};
        ray_t = sinalpha;
      } else {
        origin = PlanePoint{params.l, exit_long};
        ray_t = -sinalpha;
      }
      ray_th = arc.theta_sign * std::cos(arc.alpha);
    } else {
      origin = PlanePoint{start.t, start.theta};
      ray_t = du;
      ray_th = dv;
    }
  }
  walk_ray(pieces, s_cum, origin, ray_t, ray_th, kInfinity, budget, params);
  return pieces;
}

}  // namespace geoblock

#include "geoblock/blocking.hpp"

#include <algorithm>
#include <cmath>

namespace geoblock {

namespace {

constexpr double kInteriorTol = 1e-12;

// Hits of a flat piece (plane coordinates within one chart strip) against the
// lifts of a cylinder point. Appends absolute arclengths.
void flat_piece_hits(std::vector<double>& out, const GeoPiece& piece, const NPoint& b,
                     double eps, const SurfaceParams& params) {
  if (b.region != Region::Cyl) return;
  const FlatPiece& f = std::get<FlatPiece>(piece.part);
  const double l = params.l;
  const double dt = f.b.t - f.a.t;
  const double dth = f.b.theta - f.a.theta;
  const double len2 = dt * dt + dth * dth;
  if (len2 <= 0.0) return;
  const int strip = static_cast<int>(std::floor(((f.a.t + f.b.t) / 2.0) / l));
  const bool odd = ((strip % 2) + 2) % 2 == 1;
  const double t_lift = odd ? (strip + 1) * l - b.t : strip * l + b.t;
  const double th_anchor = odd ? b.theta - kPi : b.theta;
  const double th_lo = std::min(f.a.theta, f.b.theta) - eps;
  const double th_hi = std::max(f.a.theta, f.b.theta) + eps;
  const int n_lo = static_cast<int>(std::ceil((th_lo - th_anchor) / kTwoPi));
  const int n_hi = static_cast<int>(std::floor((th_hi - th_anchor) / kTwoPi));
  for (int n = n_lo; n <= n_hi; ++n) {
    const double th_lift = th_anchor + kTwoPi * n;
    double u = ((t_lift - f.a.t) * dt + (th_lift - f.a.theta) * dth) / len2;
    if (u < -kInteriorTol || u > 1.0 + kInteriorTol) continue;
    u = std::clamp(u, 0.0, 1.0);
    double dist = std::hypot(t_lift - (f.a.t + u * dt), th_lift - (f.a.theta + u * dth));
    if (dist <= eps) out.push_back(piece.s_begin + u * piece.length);
  }
}

// Hits of a (possibly partial) cap arc against a point of the same cap or a
// point on/near its equator. Closed-form closest approach on the great circle.
void arc_piece_hits(std::vector<double>& out, const GeoPiece& piece, const NPoint& b,
                    double eps, const SurfaceParams& params) {
  const CapArc& arc = std::get<CapArc>(piece.part);
  double phi_b = 0.0, d_b = 0.0;
  if (b.region == arc.cap) {
    phi_b = b.theta;
    d_b = b.depth;
  } else if (b.region == Region::Cyl) {
    double offset = arc.cap == Region::Cap0 ? b.t : params.l - b.t;
    if (offset > eps) return;
    phi_b = b.theta;
    d_b = 0.0;
  } else {
    return;
  }
  // Components of b in the frame (entry point, entry tangent, circle normal):
  // the off-plane part gives the distance to the full circle without the
  // precision loss of acos near 1.
  const double dphi = std::remainder(phi_b - arc.entry_longitude, kTwoPi);
  const double ba = std::cos(d_b) * std::cos(dphi);
  const double bu = arc.theta_sign * std::cos(arc.alpha) * std::cos(d_b) * std::sin(dphi) +
                    std::sin(arc.alpha) * std::sin(d_b);
  const double bn = arc.theta_sign * std::cos(arc.alpha) * std::sin(d_b) -
                    std::sin(arc.alpha) * std::cos(d_b) * std::sin(dphi);
  const double off_plane = std::asin(std::clamp(std::fabs(bn), 0.0, 1.0));
  if (off_plane > eps) return;
  const double s_star = std::atan2(bu, ba);
  const double lo = piece.arc_s0;
  const double hi = piece.arc_s0 + piece.length;
  double best_dist = kInfinity;
  double best_s = lo;
  for (double s_cand : {std::clamp(s_star, lo, hi), lo, hi}) {
    double gap = std::remainder(s_cand - s_star, kTwoPi);
    double dist = std::hypot(off_plane, gap);
    if (dist < best_dist) {
      best_dist = dist;
      best_s = s_cand;
    }
  }
  if (best_dist <= eps) out.push_back(piece.s_begin + (best_s - piece.arc_s0));
}

}  // namespace

std::vector<double> blocking_times(const NGeodesic& g, const NPoint& b, double eps) {
  std::vector<double> hits_s;
  for (const GeoPiece& piece : g.pieces) {
    if (std::holds_alternative<FlatPiece>(piece.part)) {
      flat_piece_hits(hits_s, piece, b, eps, g.params);
    } else {
      arc_piece_hits(hits_s, piece, b, eps, g.params);
      // equator passes at the arc boundaries
      for (double s_arc : {piece.arc_s0, piece.arc_s0 + piece.length}) {
        const CapArc& arc = std::get<CapArc>(piece.part);
        double depth = arc_depth(arc, s_arc);
        if (depth > eps) continue;
        NPoint e = NPoint::cylinder(arc.cap == Region::Cap0 ? 0.0 : g.params.l,
                                    arc_longitude(arc, s_arc));
        if (surface_distance(e, b, g.params, eps) <= eps) {
          hits_s.push_back(piece.s_begin + (s_arc - piece.arc_s0));
        }
      }
    }
  }
  std::sort(hits_s.begin(), hits_s.end());
  const double merge_tol = std::max(2.0 * eps, 1e-12);
  std::vector<double> out;
  for (double s : hits_s) {
    double u = s / g.n_length;
    if (u <= kInteriorTol || u >= 1.0 - kInteriorTol) continue;
    if (!out.empty() && s - out.back() * g.n_length <= merge_tol) continue;
    out.push_back(u);
  }
  return out;
}

BlockingSet canonical_blocking_set(const CylPoint& x1, const CylPoint& x2,
                                   const SurfaceParams& params) {
  BlockingSet set;
  set.allow_endpoints = false;
  set.eps = 1e-9;
  for (const TorusMidpoint& mid : torus_midpoint_classes(x1, x2, params)) {
    NPoint p = fold_to_n(mid.residue, params);
    bool dup = false;
    for (const NPoint& seen : set.points) {
      if (surface_distance(seen, p, params, set.eps) <= set.eps) {
        dup = true;
        break;
      }
    }
    if (!dup) set.points.push_back(p);
  }
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    if (surface_distance(set.points[i], to_npoint(x1), params, set.eps) <= set.eps ||
        surface_distance(set.points[i], to_npoint(x2), params, set.eps) <= set.eps) {
      set.endpoint_coincident.push_back(i);
    }
  }
  return set;
}

BlockReport verify_security(const Configuration& cfg, const BlockingSet& set,
                            double l_max, const SurfaceParams& params) {
  if (set.allow_endpoints) {
    throw std::invalid_argument("verify_security needs a security-mode set (allow_endpoints=false)");
  }
  BlockReport report;
  report.l_max = l_max;
  report.eps = set.eps;

  std::vector<NPoint> points;
  for (const NPoint& p : set.points) {
    if (surface_distance(p, to_npoint(cfg.x), params, set.eps) <= set.eps ||
        surface_distance(p, to_npoint(cfg.y), params, set.eps) <= set.eps) {
      report.dropped_points.push_back(p);
    } else {
      points.push_back(p);
    }
  }

  for (const NGeodesic& g : geodesics_between(cfg.x, cfg.y, l_max, params)) {
    if (!g.primitive) continue;
    ++report.total;
    std::vector<double> times;
    for (const NPoint& b : points) {
      std::vector<double> ts = blocking_times(g, b, set.eps);
      times.insert(times.end(), ts.begin(), ts.end());
    }
    std::sort(times.begin(), times.end());
    if (times.empty()) {
      report.unblocked.push_back(UnblockedEntry{g.source.target, g.source.flat_length, g.n_length});
    } else {
      ++report.blocked;
    }
    report.hit_times.push_back(std::move(times));
  }
  report.vacuous = report.total == 0;
  return report;
}

MidpointCertificate falsify_midpoint_security(const Configuration& cfg, int i_begin,
                                              int i_end, const SurfaceParams& params) {
  if (i_begin < 0 || i_end < i_begin) throw std::invalid_argument("bad winding range");
  MidpointCertificate cert;
  for (int i = i_begin; i <= i_end; ++i) {
    NGeodesic g = gamma_i(cfg.x, cfg.y, i, params);
    cert.midpoints.push_back(MidpointRecord{i, point_at(g, 0.5)});
  }
  constexpr double kCertBand = 1e-3;   // through-equator band for the certificate
  constexpr double kDistinct = 1e-9;
  cert.min_pairwise_distance = kInfinity;
  std::vector<bool> merged(cert.midpoints.size(), false);
  for (std::size_t a = 0; a < cert.midpoints.size(); ++a) {
    for (std::size_t b = a + 1; b < cert.midpoints.size(); ++b) {
      double d = surface_distance(cert.midpoints[a].midpoint, cert.midpoints[b].midpoint,
                                  params, kCertBand);
      cert.min_pairwise_distance = std::min(cert.min_pairwise_distance, d);
      if (d <= kDistinct) merged[b] = true;
    }
  }
  cert.distinct_count = 0;
  for (bool m : merged) cert.distinct_count += m ? 0 : 1;
  return cert;
}

std::vector<CapArc> equator_insecurity_arcs(int k) {
  if (k < 1) throw std::invalid_argument("need at least one arc");
  std::vector<CapArc> arcs;
  for (int j = 1; j <= k; ++j) {
    double beta = j * kPi / (k + 1);
    CapArc arc;
    arc.cap = Region::Cap0;
    arc.entry_longitude = 0.0;
    arc.alpha = std::min(beta, kPi - beta);
    arc.theta_sign = beta <= kPi / 2.0 ? 1 : -1;
    arcs.push_back(arc);
  }
  return arcs;
}

CapArc arc_avoiding(const std::vector<NPoint>& candidates, const SurfaceParams& params) {
  (void)params;
  // Each lower-cap candidate lies on exactly one member of the family of half
  // great circles joining the equator pair; avoid those entry slopes.
  std::vector<double> excluded;
  for (const NPoint& b : candidates) {
    if (b.region != Region::Cap0 || b.depth <= 0.0) continue;
    double beta = std::atan2(std::sin(b.depth), std::cos(b.depth) * std::sin(b.theta));
    if (beta > 0.0 && beta < kPi) excluded.push_back(beta);
  }
  std::sort(excluded.begin(), excluded.end());
  double best_beta = kPi / 2.0;
  double best_gap = -1.0;
  double prev = 0.0;
  for (std::size_t i = 0; i <= excluded.size(); ++i) {
    double next = i < excluded.size() ? excluded[i] : kPi;
    if (next - prev > best_gap) {
      best_gap = next - prev;
      best_beta = (prev + next) / 2.0;
    }
    prev = next;
  }
  CapArc arc;
  arc.cap = Region::Cap0;
  arc.entry_longitude = 0.0;
  arc.alpha = std::min(best_beta, kPi - best_beta);
  arc.theta_sign = best_beta <= kPi / 2.0 ? 1 : -1;
  return arc;
}

}  // namespace geoblock

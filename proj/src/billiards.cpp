#include "geoblock/billiards.hpp"

#include <algorithm>
#include <cmath>

namespace geoblock {

int Table::theta_mirror_order() const {
  switch (kind) {
    case TableKind::M1:
    case TableKind::Quarter:
      return 1;
    case TableKind::Wedge:
    case TableKind::WedgeSigma:
      return n;
    case TableKind::M2:
      return 0;
  }
  return 0;
}

bool Table::has_sigma_mirror() const {
  return kind == TableKind::M2 || kind == TableKind::Quarter || kind == TableKind::WedgeSigma;
}

int Table::degree() const {
  int d = theta_mirror_order() > 0 ? 2 * theta_mirror_order() : 1;
  if (has_sigma_mirror()) d *= 2;
  return d;
}

Table make_table(TableKind kind, const SurfaceParams& params, int n) {
  validate_params(params);
  if ((kind == TableKind::Wedge || kind == TableKind::WedgeSigma) && n < 2) {
    throw std::invalid_argument("wedge order must be >= 2");
  }
  Table t;
  t.kind = kind;
  t.n = n;
  t.params = params;
  return t;
}

NPoint deck_apply(const DeckElement& g, const NPoint& p, const Table& table) {
  const int order = table.theta_mirror_order();
  double shift = order > 0 ? kTwoPi * g.theta_k / order : 0.0;
  double theta = wrap_angle(g.theta_sign * p.theta + shift);
  if (p.region == Region::Cyl) {
    double t = g.sigma ? table.params.l - p.t : p.t;
    return NPoint::cylinder(t, theta);
  }
  Region cap = p.region;
  if (g.sigma) cap = (cap == Region::Cap0) ? Region::CapL : Region::Cap0;
  return NPoint::cap(cap, theta, p.depth);
}

SurfaceVec deck_apply_dir(const DeckElement& g, const SurfaceVec& v) {
  // Cylinder frame (dt, dtheta): sigma flips dt. Cap frame (ddepth, dlong):
  // sigma preserves both components (depth is measured away from the shared
  // equator on either cap).
  return SurfaceVec{v.u, static_cast<double>(g.theta_sign) * v.v};
}

namespace {

SurfaceVec deck_apply_dir_cyl(const DeckElement& g, const SurfaceVec& v) {
  return SurfaceVec{g.sigma ? -v.u : v.u, static_cast<double>(g.theta_sign) * v.v};
}

DeckElement compose_theta_reflection(const DeckElement& g, int wall_k, int order) {
  // R_wall o g with R_wall: theta -> 2*(wall_k*pi/order) - theta,
  // i.e. sign -1, rotation shift wall_k * (2*pi/order).
  DeckElement out = g;
  out.theta_sign = -g.theta_sign;
  int k = -g.theta_k + wall_k;
  out.theta_k = ((k % order) + order) % order;
  return out;
}

DeckElement compose_sigma(const DeckElement& g) {
  DeckElement out = g;
  out.sigma = !g.sigma;
  return out;
}

}  // namespace

std::vector<DeckElement> deck_group(const Table& table) {
  std::vector<DeckElement> out;
  const int order = table.theta_mirror_order();
  const int sigma_count = table.has_sigma_mirror() ? 2 : 1;
  for (int s = 0; s < sigma_count; ++s) {
    if (order == 0) {
      out.push_back(DeckElement{1, 0, s == 1});
    } else {
      for (int sign : {1, -1}) {
        for (int k = 0; k < order; ++k) {
          out.push_back(DeckElement{sign, k, s == 1});
        }
      }
    }
  }
  return out;
}

std::string deck_name(const DeckElement& g) {
  std::string name;
  if (g.sigma) name = "R_sigma";
  if (g.theta_sign == -1) {
    if (!name.empty()) name += "*";
    name += "R_theta" + std::to_string(g.theta_k);
  } else if (g.theta_k != 0) {
    if (!name.empty()) name += "*";
    name += "rot" + std::to_string(g.theta_k);
  }
  return name.empty() ? "id" : name;
}

std::pair<NPoint, DeckElement> fold_to_table(const NPoint& x, const Table& table) {
  DeckElement g;
  NPoint p = x;
  const int order = table.theta_mirror_order();
  if (order > 0) {
    const double w = kPi / order;
    double theta = wrap_angle(p.theta);
    long j = static_cast<long>(std::floor(theta / w));
    if (j >= 2 * order) j = 2 * order - 1;
    double frac = theta - j * w;
    constexpr double kEdge = 1e-13;
    if (j % 2 == 0) {
      g.theta_sign = 1;
      g.theta_k = static_cast<int>(((-(j / 2)) % order + order) % order);
      theta = frac;
    } else if (frac <= kEdge) {
      // wall point: rotation-only representative
      g.theta_sign = 1;
      g.theta_k = static_cast<int>(((-((j - 1) / 2)) % order + order) % order);
      theta = w;
    } else {
      g.theta_sign = -1;
      g.theta_k = static_cast<int>((((j + 1) / 2) % order + order) % order);
      theta = w - frac;
    }
    p.theta = theta;
  }
  if (table.has_sigma_mirror()) {
    bool flip = (p.region == Region::Cyl && p.t > table.params.l / 2.0) ||
                p.region == Region::CapL;
    if (flip) {
      g = compose_sigma(g);
      if (p.region == Region::Cyl) {
        p.t = table.params.l - p.t;
      } else {
        p.region = Region::Cap0;
      }
    }
  }
  return {p, g};
}

NPoint BilliardTrajectory::n_point_at(double s) const {
  return eval_pieces(n_pieces, std::clamp(s, 0.0, length), table.params);
}

NPoint BilliardTrajectory::at(double s) const {
  return fold_to_table(n_point_at(s), table).first;
}

namespace {

struct WallEvent {
  double s = 0.0;          // absolute arclength
  enum Kind { Theta, Sigma, Pole } kind = Theta;
  bool in_cap = false;
  std::size_t piece = 0;
};

constexpr double kEventTol = 1e-9;
constexpr double kPoleTol = 1e-12;

void flat_piece_events(std::vector<WallEvent>& out, const GeoPiece& piece,
                       std::size_t index, const Table& table) {
  const FlatPiece& f = std::get<FlatPiece>(piece.part);
  const double len = piece.length;
  const double dt = (f.b.t - f.a.t) / len;
  const double dth = (f.b.theta - f.a.theta) / len;
  const int order = table.theta_mirror_order();
  if (order > 0 && dth != 0.0) {
    const double w = kPi / order;  // plane mirror lines theta = j*w
    double lo = std::min(f.a.theta, f.b.theta);
    double hi = std::max(f.a.theta, f.b.theta);
    for (long j = static_cast<long>(std::ceil(lo / w)); j * w <= hi; ++j) {
      double s_loc = (j * w - f.a.theta) / dth;
      if (s_loc > kEventTol && s_loc <= len) {
        out.push_back(WallEvent{piece.s_begin + s_loc, WallEvent::Theta, false, index});
      }
    }
  }
  if (table.has_sigma_mirror() && dt != 0.0) {
    const double l = table.params.l;  // plane mirror lines t = l/2 + j*l
    double lo = std::min(f.a.t, f.b.t);
    double hi = std::max(f.a.t, f.b.t);
    for (long j = static_cast<long>(std::ceil((lo - l / 2.0) / l)); l / 2.0 + j * l <= hi; ++j) {
      double s_loc = (l / 2.0 + j * l - f.a.t) / dt;
      if (s_loc > kEventTol && s_loc <= len) {
        out.push_back(WallEvent{piece.s_begin + s_loc, WallEvent::Sigma, false, index});
      }
    }
  }
}

void arc_piece_events(std::vector<WallEvent>& out, const GeoPiece& piece,
                      std::size_t index, const Table& table) {
  const CapArc& arc = std::get<CapArc>(piece.part);
  const int order = table.theta_mirror_order();
  if (order == 0) return;  // the sigma circle does not meet the caps
  const double lo = piece.arc_s0;
  const double hi = piece.arc_s0 + piece.length;
  if (arc.alpha >= kPi / 2.0 - kPoleTol) {
    // meridian arc through the pole, which lies on every meridian wall
    double s_pole = kPi / 2.0;
    if (s_pole > lo + kEventTol && s_pole <= hi) {
      out.push_back(WallEvent{piece.s_begin + (s_pole - lo), WallEvent::Pole, true, index});
    }
    return;
  }
  const double w = kPi / order;
  for (int j = 0; j < 2 * order; ++j) {
    double target = std::remainder(arc.theta_sign * (j * w - arc.entry_longitude), kTwoPi);
    if (target <= 0.0 || target >= kPi) continue;
    double s_cross = std::atan2(std::sin(target), std::cos(target) * std::cos(arc.alpha));
    if (s_cross > lo + kEventTol && s_cross <= hi) {
      out.push_back(WallEvent{piece.s_begin + (s_cross - lo), WallEvent::Theta, true, index});
    }
  }
}

double line_angle(const SurfaceVec& dir, bool tangent_is_theta) {
  double comp = tangent_is_theta ? dir.v : dir.u;
  return std::acos(std::clamp(std::fabs(comp), 0.0, 1.0));
}

}  // namespace

BilliardTrajectory simulate(const Table& table, const NPoint& start,
                            const SurfaceVec& direction, double length) {
  validate_params(table.params);
  if (!(length > 0.0)) throw std::invalid_argument("length must be positive");
  auto [rep, fold_elem] = fold_to_table(start, table);
  if (!fold_elem.is_identity() ||
      surface_distance(rep, start, table.params, 1e-6) > 1e-9) {
    throw std::invalid_argument("start must lie in the fundamental domain");
  }
  const int order = table.theta_mirror_order();
  {
    // interior check: strictly off every wall
    double wall_dist = kInfinity;
    if (order > 0) {
      double w = kPi / order;
      double th = start.theta;
      wall_dist = std::min(wall_dist, std::min(th - std::floor(th / w) * w,
                                               std::ceil(th / w) * w - th));
    }
    if (table.has_sigma_mirror() && start.region == Region::Cyl) {
      wall_dist = std::min(wall_dist, std::fabs(start.t - table.params.l / 2.0));
    }
    if (wall_dist < 1e-9) throw std::invalid_argument("start lies on the table boundary");
  }

  BilliardTrajectory traj;
  traj.table = table;
  traj.n_pieces = n_flow(start, direction, length, table.params);
  traj.length = length;

  std::vector<WallEvent> events;
  for (std::size_t i = 0; i < traj.n_pieces.size(); ++i) {
    const GeoPiece& piece = traj.n_pieces[i];
    if (std::holds_alternative<FlatPiece>(piece.part)) {
      flat_piece_events(events, piece, i, table);
    } else {
      arc_piece_events(events, piece, i, table);
    }
  }
  std::sort(events.begin(), events.end(),
            [](const WallEvent& a, const WallEvent& b) { return a.s < b.s; });

  DeckElement g;  // fold element for the current stretch
  for (std::size_t e = 0; e < events.size(); ++e) {
    const WallEvent& ev = events[e];
    bool corner = false;
    if (e + 1 < events.size() && events[e + 1].s - ev.s <= kEventTol &&
        events[e + 1].kind != ev.kind) {
      corner = true;
    }
    if (ev.kind == WallEvent::Pole && order >= 2) corner = true;

    NPoint p_n = eval_pieces(traj.n_pieces, ev.s, table.params);
    if (corner) {
      traj.end = TrajectoryEnd::Corner;
      traj.terminal_point = fold_to_table(p_n, table).first;
      traj.length = ev.s;
      break;
    }

    const GeoPiece& piece = traj.n_pieces[ev.piece];
    SurfaceVec dir_n;
    if (std::holds_alternative<FlatPiece>(piece.part)) {
      const FlatPiece& f = std::get<FlatPiece>(piece.part);
      dir_n = SurfaceVec{(f.b.t - f.a.t) / piece.length, (f.b.theta - f.a.theta) / piece.length};
    } else {
      const CapArc& arc = std::get<CapArc>(piece.part);
      dir_n = arc_tangent(arc, piece.arc_s0 + (ev.s - piece.s_begin));
    }

    BounceEvent bounce;
    bounce.s = ev.s;
    bounce.point = fold_to_table(p_n, table).first;

    if (ev.kind == WallEvent::Pole) {
      // smooth boundary point of the meridian wall; work in the pole frame
      const CapArc& arc = std::get<CapArc>(traj.n_pieces[ev.piece].part);
      double shift = order > 0 ? kTwoPi * g.theta_k / order : 0.0;
      double a_in = g.theta_sign * (arc.entry_longitude + kPi) + shift;
      DeckElement g2 = compose_theta_reflection(g, 0, order);
      double shift2 = kTwoPi * g2.theta_k / order;
      double a_out = g2.theta_sign * (arc.entry_longitude + kPi) + shift2;
      bounce.angle_in = std::acos(std::fabs(std::cos(a_in)));
      bounce.angle_out = std::acos(std::fabs(std::cos(a_out)));
      bounce.mirror = "pole";
      g = g2;
    } else if (ev.kind == WallEvent::Theta) {
      double normal_comp = dir_n.v;
      if (std::fabs(normal_comp) < kPoleTol) {
        traj.end = TrajectoryEnd::Tangency;
        traj.terminal_point = bounce.point;
        traj.length = ev.s;
        break;
      }
      SurfaceVec in_f = ev.in_cap ? deck_apply_dir(g, dir_n) : deck_apply_dir_cyl(g, dir_n);
      const double w = kPi / order;
      double folded_theta = bounce.point.theta;
      int wall_k = folded_theta < w / 2.0 ? 0 : 1;
      DeckElement g2 = compose_theta_reflection(g, wall_k, order);
      SurfaceVec out_f = ev.in_cap ? deck_apply_dir(g2, dir_n) : deck_apply_dir_cyl(g2, dir_n);
      bounce.angle_in = line_angle(in_f, false);   // wall tangent: meridian
      bounce.angle_out = line_angle(out_f, false);
      bounce.mirror = "tau";
      g = g2;
    } else {
      double normal_comp = dir_n.u;
      if (std::fabs(normal_comp) < kPoleTol) {
        traj.end = TrajectoryEnd::Tangency;
        traj.terminal_point = bounce.point;
        traj.length = ev.s;
        break;
      }
      SurfaceVec in_f = deck_apply_dir_cyl(g, dir_n);
      DeckElement g2 = compose_sigma(g);
      SurfaceVec out_f = deck_apply_dir_cyl(g2, dir_n);
      bounce.angle_in = line_angle(in_f, true);    // wall tangent: the circle
      bounce.angle_out = line_angle(out_f, true);
      bounce.mirror = "sigma";
      g = g2;
    }
    traj.bounces.push_back(std::move(bounce));
  }

  if (traj.end != TrajectoryEnd::Length) {
    // cut the unfolded pieces at the terminal arclength
    std::vector<GeoPiece> cut;
    for (const GeoPiece& piece : traj.n_pieces) {
      if (piece.s_begin >= traj.length) break;
      GeoPiece p = piece;
      p.length = std::min(piece.length, traj.length - piece.s_begin);
      cut.push_back(p);
    }
    traj.n_pieces = std::move(cut);
  }
  return traj;
}

std::vector<TableGeodesic> table_geodesics(const NPoint& x, const NPoint& y,
                                           double l_max, const Table& table) {
  if (!is_interior_cyl(x, table.params) || !is_interior_cyl(y, table.params)) {
    throw std::invalid_argument("table endpoints must have interior cylinder lifts");
  }
  std::vector<TableGeodesic> out;
  for (const DeckElement& g : deck_group(table)) {
    NPoint y_lift = deck_apply(g, y, table);
    if (!is_interior_cyl(y_lift, table.params)) {
      throw std::domain_error("orbit lift touches a cap equator");
    }
    for (NGeodesic& lift : geodesics_between(as_cyl(x), as_cyl(y_lift), l_max, table.params)) {
      out.push_back(TableGeodesic{std::move(lift), g});
    }
  }
  std::sort(out.begin(), out.end(), [](const TableGeodesic& a, const TableGeodesic& b) {
    return a.lift.n_length < b.lift.n_length;
  });
  return out;
}

std::vector<NPoint> table_blocking_set(const NPoint& x, const NPoint& y,
                                       const Table& table) {
  std::vector<NPoint> out;
  for (const DeckElement& g : deck_group(table)) {
    NPoint y_lift = deck_apply(g, y, table);
    BlockingSet canonical = canonical_blocking_set(as_cyl(x), as_cyl(y_lift), table.params);
    for (const NPoint& b : canonical.points) {
      NPoint folded = fold_to_table(b, table).first;
      bool dup = false;
      for (const NPoint& seen : out) {
        if (surface_distance(seen, folded, table.params, 1e-6) <= 1e-9) dup = true;
      }
      if (!dup) out.push_back(folded);
    }
  }
  return out;
}

std::vector<double> table_hit_times(const NGeodesic& lift, const NPoint& table_point,
                                    const Table& table, double eps) {
  std::vector<double> out;
  for (const DeckElement& g : deck_group(table)) {
    NPoint b = deck_apply(g, table_point, table);
    auto ts = blocking_times(lift, b, eps);
    out.insert(out.end(), ts.begin(), ts.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end(),
                        [](double a, double b) { return std::fabs(a - b) <= 1e-12; }),
            out.end());
  return out;
}

}  // namespace geoblock

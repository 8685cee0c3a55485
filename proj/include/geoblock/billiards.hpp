#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "geoblock/blocking.hpp"
#include "geoblock/surface_n.hpp"

namespace geoblock {

enum class TableKind { M1, M2, Quarter, Wedge, WedgeSigma };

/// Quotient billiard table of the capped surface.
///   M1:         half bounded by the closed meridian geodesic (theta in [0, pi])
///   M2:         cylinder half t <= l/2 plus the lower cap, bounded by the
///               circle t = l/2
///   Quarter:    bounded by both
///   Wedge(n):   lune 0 <= theta <= pi/n between two pole-to-pole meridians
///   WedgeSigma: the wedge cut additionally by t = l/2
struct Table {
  TableKind kind = TableKind::M1;
  int n = 2;  // wedge order, n >= 2
  SurfaceParams params;

  /// Count of theta mirror spacing: mirrors at multiples of pi/order
  /// (0 when the table has no meridian walls).
  int theta_mirror_order() const;
  bool has_sigma_mirror() const;
  int degree() const;  // covering degree of the fold
};

Table make_table(TableKind kind, const SurfaceParams& params, int n = 2);

/// Isometry of the surface generated by meridian reflections (dihedral on
/// theta) and the swap t -> l - t.
struct DeckElement {
  int theta_sign = 1;  // +-1
  int theta_k = 0;     // rotation by 2*pi*k/order
  bool sigma = false;

  bool is_identity() const { return theta_sign == 1 && theta_k == 0 && !sigma; }
};

NPoint deck_apply(const DeckElement& g, const NPoint& p, const Table& table);
SurfaceVec deck_apply_dir(const DeckElement& g, const SurfaceVec& v);
std::vector<DeckElement> deck_group(const Table& table);
std::string deck_name(const DeckElement& g);

/// Unique fundamental-domain representative and the group element applied
/// (boundary points return the identity-coset representative).
std::pair<NPoint, DeckElement> fold_to_table(const NPoint& x, const Table& table);

struct BounceEvent {
  double s = 0.0;        // arclength along the trajectory
  NPoint point;          // folded boundary point
  double angle_in = 0.0;
  double angle_out = 0.0;
  std::string mirror;    // "tau", "sigma" or "pole"
};

enum class TrajectoryEnd { Length, Corner, Tangency };

struct BilliardTrajectory {
  Table table;
  std::vector<GeoPiece> n_pieces;  // unfolded flow
  double length = 0.0;             // simulated length (requested unless cut short)
  std::vector<BounceEvent> bounces;
  TrajectoryEnd end = TrajectoryEnd::Length;
  std::optional<NPoint> terminal_point;

  NPoint n_point_at(double s) const;  // unfolded
  NPoint at(double s) const;          // folded table point
};

/// Simulate the billiard from a table-interior start. The trajectory is the
/// fold of the surface geodesic flow; bounce events sit where the flow
/// crosses a wall lift. Corner hits and tangential contacts terminate early.
BilliardTrajectory simulate(const Table& table, const NPoint& start,
                            const SurfaceVec& direction, double length);

struct TableGeodesic {
  NGeodesic lift;         // from the fixed lift of x to one orbit lift of y
  DeckElement orbit_elem; // the element carrying y to that lift
};

/// Billiard paths between table points via the unfolding trick: one lift per
/// deck-orbit member of y. Requires interior cylinder lifts.
std::vector<TableGeodesic> table_geodesics(const NPoint& x, const NPoint& y,
                                           double l_max, const Table& table);

/// Folded union of the canonical blocking sets over the orbit configurations.
std::vector<NPoint> table_blocking_set(const NPoint& x, const NPoint& y,
                                       const Table& table);

/// Hit times of a folded path against a table point: union over the deck
/// orbit of the point on the unfolded lift.
std::vector<double> table_hit_times(const NGeodesic& lift, const NPoint& table_point,
                                    const Table& table, double eps);

}  // namespace geoblock

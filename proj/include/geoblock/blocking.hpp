#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "geoblock/surface_n.hpp"

namespace geoblock {

/// Ordered pair of interior cylinder points.
struct Configuration {
  CylPoint x;
  CylPoint y;
};

/// Finite candidate blocking set. In security mode (allow_endpoints false) no
/// member may coincide with a configuration endpoint; in midpoint mode the
/// endpoints are permitted.
struct BlockingSet {
  std::vector<NPoint> points;
  bool allow_endpoints = false;
  double eps = 1e-9;
  std::vector<std::size_t> endpoint_coincident;  // members within eps of an endpoint
};

/// Fold of the 8 torus midpoint classes; duplicates merged, endpoint
/// coincidences flagged.
BlockingSet canonical_blocking_set(const CylPoint& x1, const CylPoint& x2,
                                   const SurfaceParams& params);

/// All interior parameters u in (0,1) where the path passes within eps of b.
/// Flat pieces are solved linearly against the lattice orbit of b, cap pieces
/// on the arc; no sampling.
std::vector<double> blocking_times(const NGeodesic& g, const NPoint& b, double eps);

struct UnblockedEntry {
  LiftClass target;
  double flat_length = 0.0;
  double n_length = 0.0;
};

struct BlockReport {
  std::size_t total = 0;
  std::size_t blocked = 0;
  std::vector<UnblockedEntry> unblocked;
  std::vector<std::vector<double>> hit_times;  // per checked geodesic, sorted
  bool vacuous = false;
  double l_max = 0.0;
  double eps = 0.0;
  std::vector<NPoint> dropped_points;  // endpoint-coincident members not used

  bool all_blocked() const { return unblocked.empty(); }
};

/// Exhaustive check that every primitive geodesic of length at most l_max
/// passes through the candidate set. Members coinciding with an endpoint are
/// excluded from the effective set and reported.
BlockReport verify_security(const Configuration& cfg, const BlockingSet& set,
                            double l_max, const SurfaceParams& params);

struct MidpointRecord {
  int index = 0;
  NPoint midpoint;
};

/// Distinctness certificate for the one-cap family midpoints: any midpoint
/// blocking set must contain at least `distinct_count` points.
struct MidpointCertificate {
  std::vector<MidpointRecord> midpoints;
  double min_pairwise_distance = 0.0;
  std::size_t distinct_count = 0;
};

MidpointCertificate falsify_midpoint_security(const Configuration& cfg, int i_begin,
                                              int i_end, const SurfaceParams& params);

/// First k half-great-circle paths in the lower cap joining the antipodal
/// equator pair ((0,0),(0,pi)); pairwise disjoint except at the endpoints.
std::vector<CapArc> equator_insecurity_arcs(int k);

/// A member of that family whose interior avoids every candidate point.
CapArc arc_avoiding(const std::vector<NPoint>& candidates, const SurfaceParams& params);

}  // namespace geoblock

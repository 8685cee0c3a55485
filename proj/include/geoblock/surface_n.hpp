#pragma once

#include <variant>
#include <vector>

#include "geoblock/flat_model.hpp"

namespace geoblock {

/// Half great circle traversed inside a hemispherical cap. Enters the equator
/// at `entry_longitude` forming angle `alpha` with it, exits at the antipodal
/// equator point (entry + pi) with the same angle after arclength exactly pi.
/// `theta_sign` is the direction of longitude travel at entry.
struct CapArc {
  Region cap = Region::Cap0;
  double entry_longitude = 0.0;  // [0, 2*pi)
  double alpha = 0.0;            // (0, pi/2]
  int theta_sign = 1;            // +1 or -1
};

/// Intrinsic evaluation along an arc, s in [0, pi].
double arc_depth(const CapArc& arc, double s);
double arc_longitude(const CapArc& arc, double s);
/// Unit tangent at parameter s in the cap's local (depth, longitude) frame.
SurfaceVec arc_tangent(const CapArc& arc, double s);

struct FlatPiece {
  PlanePoint a;
  PlanePoint b;
};

/// One piece of a path on the surface: either a folded plane sub-segment or a
/// (possibly partial) cap arc starting at arc parameter `arc_s0`.
struct GeoPiece {
  std::variant<FlatPiece, CapArc> part;
  double length = 0.0;
  double s_begin = 0.0;   // cumulative arclength at the piece start
  double arc_s0 = 0.0;    // offset into the arc (arcs only)
};

NPoint eval_pieces(const std::vector<GeoPiece>& pieces, double s,
                   const SurfaceParams& params);

/// Geodesic of the capped surface: an unfolded straight segment plus the
/// derived piecewise structure. Parametrized by [0,1] proportional to
/// arclength; each seam crossing contributes a cap arc of length pi.
struct NGeodesic {
  SurfaceParams params;
  PlaneSegment source;
  std::vector<GeoPiece> pieces;
  double n_length = 0.0;
  bool primitive = true;

  int cap_arc_count() const;
  NPoint at(double u) const;  // u in [0, 1]
};

NPoint point_at(const NGeodesic& g, double u);

/// Build the piecewise path of a straight segment whose endpoints fold to
/// interior cylinder points. Crossings of plane lines t in 2lZ become Cap0
/// arcs, t in 2lZ + l become CapL arcs.
NGeodesic build_path(const PlaneSegment& seg, const SurfaceParams& params);

/// Closed forms for the one-cap family winding i times in the theta direction.
struct GammaInfo {
  CylPoint x1;
  CylPoint x2;
  int index = 0;
  double flat_length = 0.0;  // sqrt((t1+t2)^2 + (2 pi i + th2 + pi - th1)^2)
  double n_length = 0.0;     // flat_length + pi
  double cap_entry_u = 0.0;  // (1 - pi/n_length) * t1/(t1+t2)
};

GammaInfo gamma_info(const CylPoint& x1, const CylPoint& x2, int index,
                     const SurfaceParams& params);

/// The constructed path of the family member: exactly one Cap0 arc, no CapL
/// arc, total length flat_length + pi.
NGeodesic gamma_i(const CylPoint& x1, const CylPoint& x2, int index,
                  const SurfaceParams& params);

/// All geodesics between two interior cylinder points with path length at
/// most L_max, sorted by length. A geodesic is primitive when no interior
/// point equals either endpoint.
std::vector<NGeodesic> geodesics_between(const CylPoint& x1, const CylPoint& x2,
                                         double l_max, const SurfaceParams& params);

/// Unfolded geodesic flow: pieces of total arclength `length` starting at
/// `start` with unit direction `dir` in the local frame. Used by the billiard
/// simulator; the start may lie in a cap.
std::vector<GeoPiece> n_flow(const NPoint& start, const SurfaceVec& dir,
                             double length, const SurfaceParams& params);

}  // namespace geoblock

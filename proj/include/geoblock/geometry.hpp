#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace geoblock {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Normalize an angle to [0, 2*pi).
double wrap_angle(double a);

/// Shortest distance between two angles on the unit circle.
double circle_distance(double a, double b);

/// Surface parameters: cylinder of length l and radius 1, capped by two unit
/// hemispheres along the equator circles t = 0 and t = l.
struct SurfaceParams {
  double l = 2.0;
};

void validate_params(const SurfaceParams& params);

/// Point in the universal-cover plane of the doubled cylinder. Coordinates are
/// unconstrained reals; canonicalization happens only at fold boundaries.
struct PlanePoint {
  double t = 0.0;
  double theta = 0.0;
};

/// Point on the cylinder part, t in [0, l], theta in [0, 2*pi).
/// t in {0, l} denotes a point on a cap equator circle.
struct CylPoint {
  double t = 0.0;
  double theta = 0.0;
};

enum class Region { Cyl, Cap0, CapL };

/// Point on the capped surface. Cylinder points carry (t, theta); cap points
/// carry (longitude, depth) where depth is the arc distance from the equator
/// (depth pi/2 is the pole). Depth-0 points are represented as cylinder points
/// with t in {0, l}.
struct NPoint {
  Region region = Region::Cyl;
  double t = 0.0;      // cylinder coordinate (Cyl only)
  double theta = 0.0;  // cylinder angle, or cap longitude
  double depth = 0.0;  // cap depth (caps only)

  static NPoint cylinder(double t, double theta);
  static NPoint cap(Region cap, double longitude, double depth);
};

bool is_interior_cyl(const NPoint& p, const SurfaceParams& params);
CylPoint as_cyl(const NPoint& p);
NPoint to_npoint(const CylPoint& p);
void require_interior(const CylPoint& p, const SurfaceParams& params);

/// Tangent vector components in the local orthonormal frame of a point.
/// Cylinder: (u, v) = (d/dt, d/dtheta). Caps: (u, v) = (d/ddepth, unit
/// longitude direction).
struct SurfaceVec {
  double u = 0.0;
  double v = 0.0;
};

/// Cheap local metric used by hit tests and distinctness certificates.
/// Same-region pairs use the intrinsic flat / spherical distance. Points in
/// different regions are finite only when both lie within `band` of the same
/// equator, measured through it; otherwise +infinity.
double surface_distance(const NPoint& p, const NPoint& q,
                        const SurfaceParams& params, double band = 1e-6);

}  // namespace geoblock

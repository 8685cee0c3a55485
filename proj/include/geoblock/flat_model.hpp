#pragma once

#include <array>
#include <vector>

#include "geoblock/geometry.hpp"

namespace geoblock {

/// Deck lattice of the doubled cylinder in the chart where the C-chart extends
/// over the whole plane: rectangular, generated by (2l, 0) and (0, 2*pi). The
/// half twist lives entirely in the Chat lift formula below.
struct Lattice {
  double period_t = 4.0;        // 2*l
  double period_theta = kTwoPi;

  static Lattice from(const SurfaceParams& params);
  PlanePoint reduce(const PlanePoint& p) const;  // canonical rep in [0,2l)x[0,2pi)
  bool congruent(const PlanePoint& a, const PlanePoint& b, double tol) const;
};

/// Which endpoint the straight segment targets: the lift of x2 itself (C) or
/// of its twisted mirror -x2 = (-t2, theta2) (Chat).
enum class LiftTag { C, Chat };

struct LiftClass {
  LiftTag tag = LiftTag::C;
  int m = 0;
  int n = 0;
};

struct Lift {
  LiftClass cls;
  PlanePoint point;
  double distance = 0.0;
};

/// Straight segment in the plane; a geodesic of the flat torus once folded.
struct PlaneSegment {
  PlanePoint start;
  PlanePoint end;
  double flat_length = 0.0;
  LiftClass target;
};

/// Quotient map plane -> cylinder part of the capped surface. With t* = t mod
/// 2l, points with t* <= l map to (t*, theta) and the rest to
/// (2l - t*, theta + pi). Results with t in {0, l} lie on a cap equator.
NPoint fold_to_n(const PlanePoint& p, const SurfaceParams& params);

/// Plane lift of a cylinder point in the given class:
///   C:    (t + 2l m, theta + 2 pi n)
///   Chat: (-t + 2l m, theta + pi + 2 pi n)
PlanePoint lift_point(const CylPoint& x, const LiftClass& cls, const SurfaceParams& params);

/// All lifts of x2 (both classes) at Euclidean distance in (0, L_max] from
/// `base`. Requires x2 in the open cylinder.
std::vector<Lift> enumerate_lifts(const CylPoint& x2, const PlanePoint& base,
                                  double l_max, const SurfaceParams& params);

/// One straight segment per lift, from the base lift of x1, sorted by flat
/// length ascending.
std::vector<PlaneSegment> torus_geodesics(const CylPoint& x1, const CylPoint& x2,
                                          double l_max, const SurfaceParams& params);

/// Midpoint residue class on the torus: every segment midpoint is congruent
/// mod the lattice to one of four residues per target class.
struct TorusMidpoint {
  LiftTag target = LiftTag::C;
  int offset = 0;       // index into {(0,0), (l,0), (0,pi), (l,pi)}
  PlanePoint residue;   // canonical representative
};

/// The 8 midpoint classes of the two segment families (duplicates merged;
/// interior configurations always yield 8 distinct torus points).
std::vector<TorusMidpoint> torus_midpoint_classes(const CylPoint& x1, const CylPoint& x2,
                                                  const SurfaceParams& params);

/// Hit times of a plane segment against the lattice orbit of a plane point.
/// Returns segment parameters in [0, 1] where some lattice translate of `b`
/// lies within eps of the segment.
std::vector<double> segment_orbit_hits(const PlanePoint& a, const PlanePoint& b,
                                       const PlanePoint& target, const Lattice& lattice,
                                       double eps);

}  // namespace geoblock

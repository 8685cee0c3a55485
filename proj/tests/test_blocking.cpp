#include "geoblock/blocking.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace geoblock;

namespace {
const SurfaceParams kP2{2.0};

NGeodesic direct_geodesic() {
  PlaneSegment seg;
  seg.start = PlanePoint{1.5, 0.0};
  seg.end = PlanePoint{0.5, 0.0};
  seg.flat_length = 1.0;
  return build_path(seg, kP2);
}
}  // namespace

TEST_CASE("canonical blocking set of the standard configuration") {
  CylPoint x1{1.5, 0.0};
  CylPoint x2{0.5, 0.0};
  BlockingSet set = canonical_blocking_set(x1, x2, kP2);
  // t1 + t2 == l merges the four C-class residues to two cylinder points.
  CHECK(set.points.size() == 6);
  CHECK(set.endpoint_coincident.empty());
  int at_mid = 0, at_half = 0, at_three_half = 0;
  for (const NPoint& p : set.points) {
    REQUIRE(p.region == Region::Cyl);
    if (std::fabs(p.t - 1.0) < 1e-12) ++at_mid;
    if (std::fabs(p.t - 0.5) < 1e-12) ++at_half;
    if (std::fabs(p.t - 1.5) < 1e-12) ++at_three_half;
  }
  CHECK(at_mid == 2);
  CHECK(at_half == 2);
  CHECK(at_three_half == 2);
}

TEST_CASE("canonical set has 8 points for generic configurations") {
  auto gen = oracles::rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    SurfaceParams params{std::uniform_real_distribution<double>(1.0, 4.0)(gen)};
    CylPoint x1 = oracles::random_interior(gen, params);
    CylPoint x2 = oracles::random_interior(gen, params);
    if (std::fabs(x1.t + x2.t - params.l) < 0.02) continue;
    if (std::fabs(x1.t - x2.t) < 0.02) continue;
    BlockingSet set = canonical_blocking_set(x1, x2, params);
    CHECK(set.points.size() == 8);
  }
}

TEST_CASE("canonical set flags endpoint coincidence when x1 == x2") {
  CylPoint x{1.0, 0.7};
  BlockingSet set = canonical_blocking_set(x, x, kP2);
  REQUIRE_FALSE(set.endpoint_coincident.empty());
  const NPoint& p = set.points[set.endpoint_coincident[0]];
  CHECK(surface_distance(p, to_npoint(x), kP2) < 1e-12);
}

TEST_CASE("canonical set puts twisted points on the equators when t1 == t2") {
  BlockingSet set = canonical_blocking_set(CylPoint{0.8, 0.1}, CylPoint{0.8, 2.4}, kP2);
  int on_equator = 0;
  for (const NPoint& p : set.points) {
    if (p.region == Region::Cyl && std::min(p.t, kP2.l - p.t) < 1e-12) ++on_equator;
  }
  CHECK(on_equator == 4);
}

TEST_CASE("blocking_times on the direct geodesic") {
  NGeodesic g = direct_geodesic();
  SUBCASE("midpoint hit") {
    auto ts = blocking_times(g, NPoint::cylinder(1.0, 0.0), 1e-9);
    REQUIRE(ts.size() == 1);
    CHECK(ts[0] == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("antipodal theta never hit") {
    CHECK(blocking_times(g, NPoint::cylinder(1.0, kPi), 1e-9).empty());
  }
}

TEST_CASE("blocking_times against the cap pole") {
  CylPoint x1{1.5, 0.0};
  CylPoint x2{0.5, 0.0};
  NPoint pole = NPoint::cap(Region::Cap0, 0.0, kPi / 2.0);
  SUBCASE("gamma_0 misses the pole since alpha_0 < pi/2") {
    NGeodesic g = gamma_i(x1, x2, 0, kP2);
    CHECK(blocking_times(g, pole, 1e-9).empty());
  }
  SUBCASE("a meridian crossing passes the pole") {
    PlaneSegment seg;
    seg.start = PlanePoint{1.5, 1.0};
    seg.end = PlanePoint{-0.5, 1.0};
    seg.flat_length = 2.0;
    NGeodesic g = build_path(seg, kP2);
    auto ts = blocking_times(g, pole, 1e-9);
    REQUIRE(ts.size() == 1);
    // pole sits at the arc middle: arclength 1.5 + pi/2 of total 2 + pi
    CHECK(ts[0] == doctest::Approx((1.5 + kPi / 2.0) / (2.0 + kPi)).epsilon(1e-12));
  }
}

TEST_CASE("blocking_times finds equator blocking points") {
  // Equal heights: twisted canonical points sit on the equators and must be
  // hit at the cap entry/exit passes.
  CylPoint x1{0.8, 0.1};
  CylPoint x2{0.8, 2.4};
  BlockingSet set = canonical_blocking_set(x1, x2, kP2);
  NGeodesic g = gamma_i(x1, x2, 0, kP2);
  bool hit_equator_point = false;
  for (const NPoint& b : set.points) {
    if (b.region == Region::Cyl && b.t < 1e-12) {
      if (!blocking_times(g, b, 1e-9).empty()) hit_equator_point = true;
    }
  }
  CHECK(hit_equator_point);
}

TEST_CASE("verify_security with the canonical set") {
  CylPoint x1{1.5, 0.0};
  CylPoint x2{0.5, 0.0};
  Configuration cfg{x1, x2};
  BlockingSet canonical = canonical_blocking_set(x1, x2, kP2);

  SUBCASE("all primitive geodesics up to 60 are blocked") {
    BlockReport report = verify_security(cfg, canonical, 60.0, kP2);
    CHECK_FALSE(report.vacuous);
    CHECK(report.total > 50);
    CHECK(report.all_blocked());
    CHECK(report.blocked == report.total);
  }
  SUBCASE("empty set blocks nothing") {
    BlockingSet empty;
    BlockReport report = verify_security(cfg, empty, 1.5, kP2);
    CHECK(report.total == 1);
    CHECK(report.unblocked.size() == 1);
  }
  SUBCASE("dropping a member leaves a witness") {
    BlockingSet weakened = canonical;
    weakened.points.erase(weakened.points.begin());
    BlockReport report = verify_security(cfg, weakened, 60.0, kP2);
    CHECK_FALSE(report.all_blocked());
  }
  SUBCASE("midpoint-mode sets are rejected") {
    BlockingSet midpoint_mode = canonical;
    midpoint_mode.allow_endpoints = true;
    CHECK_THROWS_AS(verify_security(cfg, midpoint_mode, 10.0, kP2), std::invalid_argument);
  }
}

TEST_CASE("canonical soundness on random configurations") {
  auto gen = oracles::rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    SurfaceParams params{std::uniform_real_distribution<double>(1.0, 4.0)(gen)};
    CylPoint x1 = oracles::random_interior(gen, params);
    CylPoint x2 = oracles::random_interior(gen, params);
    BlockReport report =
        verify_security(Configuration{x1, x2}, canonical_blocking_set(x1, x2, params), 40.0, params);
    CHECK_FALSE(report.vacuous);
    CHECK(report.all_blocked());
  }
}

TEST_CASE("hit times agree with dense sampling") {
  auto gen = oracles::rng(33);
  int checked = 0;
  while (checked < 100) {
    SurfaceParams params{std::uniform_real_distribution<double>(1.5, 3.5)(gen)};
    CylPoint x1 = oracles::random_interior(gen, params, 0.1);
    CylPoint x2 = oracles::random_interior(gen, params, 0.1);
    auto geos = geodesics_between(x1, x2, 15.0, params);
    if (geos.empty()) continue;
    const NGeodesic& g = geos[std::uniform_int_distribution<std::size_t>(0, geos.size() - 1)(gen)];
    double u_star = std::uniform_real_distribution<double>(0.05, 0.95)(gen);
    NPoint b = point_at(g, u_star);
    auto ts = blocking_times(g, b, 1e-9);
    int near = 0;
    for (double u : ts) {
      if (std::fabs(u - u_star) < 1e-3) ++near;
      CHECK(surface_distance(point_at(g, u), b, params, 1e-3) < 1e-8);
    }
    CHECK(near == 1);
    // dense sweep: any close approach has a reported hit nearby
    for (double u = 1e-4; u < 1.0; u += 1e-4) {
      if (surface_distance(point_at(g, u), b, params, 1e-3) < 0.5e-9) {
        bool matched = false;
        for (double t : ts) {
          if (std::fabs(t - u) <= 2e-4) matched = true;
        }
        CHECK(matched);
      }
    }
    ++checked;
  }
}

TEST_CASE("midpoint falsifier certificates") {
  SUBCASE("standard configuration") {
    MidpointCertificate cert =
        falsify_midpoint_security(Configuration{{1.5, 0.0}, {0.5, 0.0}}, 0, 50, kP2);
    CHECK(cert.midpoints.size() == 51);
    CHECK(cert.distinct_count == 51);
    CHECK(cert.min_pairwise_distance > 1e-4);
  }
  SUBCASE("equal heights") {
    MidpointCertificate cert =
        falsify_midpoint_security(Configuration{{1.0, 0.0}, {1.0, 0.3}}, 0, 50, kP2);
    CHECK(cert.distinct_count == 51);
    double prev = kInfinity;
    for (const MidpointRecord& rec : cert.midpoints) {
      REQUIRE(rec.midpoint.region == Region::Cap0);
      CHECK(rec.midpoint.depth < prev);
      prev = rec.midpoint.depth;
    }
  }
  SUBCASE("single element") {
    MidpointCertificate cert =
        falsify_midpoint_security(Configuration{{1.5, 0.0}, {0.5, 0.0}}, 3, 3, kP2);
    CHECK(cert.distinct_count == 1);
  }
  SUBCASE("midpoint count grows with the range") {
    for (int k : {10, 60}) {
      MidpointCertificate cert =
          falsify_midpoint_security(Configuration{{1.5, 0.0}, {0.5, 0.0}}, 0, k - 1, kP2);
      CHECK(cert.distinct_count == static_cast<std::size_t>(k));
    }
  }
}

TEST_CASE("equator insecurity arcs") {
  SUBCASE("pairwise disjoint interiors") {
    auto arcs = equator_insecurity_arcs(5);
    REQUIRE(arcs.size() == 5);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      for (std::size_t b = a + 1; b < arcs.size(); ++b) {
        double min_d = kInfinity;
        for (double s = 0.05; s < kPi - 0.05; s += 0.01) {
          for (double r = 0.05; r < kPi - 0.05; r += 0.01) {
            NPoint pa = NPoint::cap(Region::Cap0, arc_longitude(arcs[a], s), arc_depth(arcs[a], s));
            NPoint pb = NPoint::cap(Region::Cap0, arc_longitude(arcs[b], r), arc_depth(arcs[b], r));
            min_d = std::min(min_d, surface_distance(pa, pb, kP2, 1e-3));
          }
        }
        CHECK(min_d > 1e-3);
      }
    }
  }
  SUBCASE("every arc joins the antipodal equator pair") {
    for (const CapArc& arc : equator_insecurity_arcs(4)) {
      CHECK(arc_depth(arc, 0.0) == doctest::Approx(0.0));
      CHECK(circle_distance(arc_longitude(arc, 0.0), 0.0) < 1e-12);
      CHECK(circle_distance(arc_longitude(arc, kPi), kPi) < 1e-12);
    }
  }
  SUBCASE("an arc avoiding a finite candidate set exists") {
    auto gen = oracles::rng(34);
    std::uniform_real_distribution<double> ulong(0.0, kTwoPi);
    std::uniform_real_distribution<double> udepth(0.01, kPi / 2.0 - 0.01);
    std::vector<NPoint> candidates;
    for (int i = 0; i < 20; ++i) {
      candidates.push_back(NPoint::cap(Region::Cap0, ulong(gen), udepth(gen)));
    }
    CapArc arc = arc_avoiding(candidates, kP2);
    for (const NPoint& b : candidates) {
      double min_d = kInfinity;
      for (double s = 1e-3; s < kPi; s += 1e-3) {
        NPoint p = NPoint::cap(Region::Cap0, arc_longitude(arc, s), arc_depth(arc, s));
        min_d = std::min(min_d, surface_distance(p, b, kP2, 1e-3));
      }
      CHECK(min_d > 1e-6);
    }
  }
}

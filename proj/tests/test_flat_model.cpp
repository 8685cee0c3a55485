#include "geoblock/flat_model.hpp"

#include <set>
#include <tuple>

#include "doctest.h"
#include "oracles.hpp"

using namespace geoblock;

namespace {
const SurfaceParams kP2{2.0};
}

TEST_CASE("fold_to_n stays put on the identity chart region") {
  NPoint p = fold_to_n(PlanePoint{1.0, 0.5}, kP2);
  CHECK(p.region == Region::Cyl);
  CHECK(p.t == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.theta == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("fold_to_n matches the seam-tracing oracle") {
  SUBCASE("strip beyond l") {
    NPoint p = fold_to_n(PlanePoint{3.5, 1.0}, kP2);
    CylPoint expect = oracles::fold_by_seam_tracing(PlanePoint{3.5, 1.0}, kP2);
    CHECK(p.t == doctest::Approx(expect.t).epsilon(1e-14));
    CHECK(p.theta == doctest::Approx(expect.theta).epsilon(1e-14));
    CHECK(p.t == doctest::Approx(0.5));
    CHECK(p.theta == doctest::Approx(wrap_angle(1.0 + kPi)));
  }
  SUBCASE("negative t crosses the t=0 seam") {
    NPoint p = fold_to_n(PlanePoint{-0.5, 0.0}, kP2);
    CHECK(p.t == doctest::Approx(0.5));
    CHECK(p.theta == doctest::Approx(kPi));
  }
  SUBCASE("random plane points") {
    auto gen = oracles::rng(11);
    std::uniform_real_distribution<double> ut(-30.0, 30.0);
    std::uniform_real_distribution<double> uth(-30.0, 30.0);
    for (int i = 0; i < 500; ++i) {
      PlanePoint p{ut(gen), uth(gen)};
      NPoint got = fold_to_n(p, kP2);
      CylPoint expect = oracles::fold_by_seam_tracing(p, kP2);
      CHECK(got.t == doctest::Approx(expect.t).epsilon(1e-10));
      CHECK(circle_distance(got.theta, expect.theta) < 1e-10);
    }
  }
}

TEST_CASE("fold/lift roundtrip over both classes") {
  auto gen = oracles::rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    SurfaceParams params{std::uniform_real_distribution<double>(1.0, 4.0)(gen)};
    CylPoint x = oracles::random_interior(gen, params);
    for (LiftTag tag : {LiftTag::C, LiftTag::Chat}) {
      for (int m = -3; m <= 3; ++m) {
        for (int n = -3; n <= 3; ++n) {
          PlanePoint lift = lift_point(x, LiftClass{tag, m, n}, params);
          NPoint back = fold_to_n(lift, params);
          CHECK(back.t == doctest::Approx(x.t).epsilon(1e-12));
          CHECK(circle_distance(back.theta, x.theta) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("fold_to_n is lattice invariant") {
  auto gen = oracles::rng(13);
  std::uniform_real_distribution<double> ut(-5.0, 5.0);
  for (int trial = 0; trial < 100; ++trial) {
    PlanePoint p{ut(gen), ut(gen)};
    NPoint base = fold_to_n(p, kP2);
    for (int m = -5; m <= 5; ++m) {
      for (int n = -5; n <= 5; ++n) {
        PlanePoint q{p.t + 4.0 * m, p.theta + kTwoPi * n};
        NPoint img = fold_to_n(q, kP2);
        CHECK(img.t == doctest::Approx(base.t).epsilon(1e-11));
        CHECK(circle_distance(img.theta, base.theta) < 1e-11);
      }
    }
  }
}

TEST_CASE("enumerate_lifts on the worked configuration") {
  CylPoint x2{0.5, 0.0};
  PlanePoint base{1.5, 0.0};

  SUBCASE("short cutoff keeps only the direct lift") {
    auto lifts = enumerate_lifts(x2, base, 1.1, kP2);
    REQUIRE(lifts.size() == 1);
    CHECK(lifts[0].cls.tag == LiftTag::C);
    CHECK(lifts[0].point.t == doctest::Approx(0.5));
    CHECK(lifts[0].point.theta == doctest::Approx(0.0));
    CHECK(lifts[0].distance == doctest::Approx(1.0));
  }
  SUBCASE("cutoff below the shortest lift is empty") {
    CHECK(enumerate_lifts(x2, base, 0.5, kP2).empty());
  }
  SUBCASE("cutoff 4 reaches the twisted class") {
    auto lifts = enumerate_lifts(x2, base, 4.0, kP2);
    bool found = false;
    for (const Lift& lift : lifts) {
      if (lift.cls.tag == LiftTag::Chat && std::fabs(lift.point.t + 0.5) < 1e-12 &&
          std::fabs(lift.point.theta - kPi) < 1e-12) {
        found = true;
        CHECK(lift.distance == doctest::Approx(std::sqrt(4.0 + kPi * kPi)).epsilon(1e-14));
      }
    }
    CHECK(found);
  }
  SUBCASE("rejects equator endpoints") {
    CHECK_THROWS_AS(enumerate_lifts(CylPoint{0.0, 0.3}, base, 2.0, kP2), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_lifts(CylPoint{2.0, 0.3}, base, 2.0, kP2), std::invalid_argument);
  }
}

TEST_CASE("enumerate_lifts matches the brute-force scan") {
  auto gen = oracles::rng(14);
  for (int trial = 0; trial < 25; ++trial) {
    SurfaceParams params{std::uniform_real_distribution<double>(1.0, 4.0)(gen)};
    CylPoint x1 = oracles::random_interior(gen, params);
    CylPoint x2 = oracles::random_interior(gen, params);
    double l_max = std::uniform_real_distribution<double>(2.0, 25.0)(gen);
    auto got = enumerate_lifts(x2, PlanePoint{x1.t, x1.theta}, l_max, params);
    auto expect = oracles::brute_lifts(x2, PlanePoint{x1.t, x1.theta}, l_max, params,
                                       oracles::brute_bound(l_max, params));
    REQUIRE(got.size() == expect.size());
    std::set<std::tuple<int, int, int>> got_keys, expect_keys;
    for (const Lift& lift : got) {
      got_keys.insert({lift.cls.tag == LiftTag::Chat ? 1 : 0, lift.cls.m, lift.cls.n});
    }
    for (const auto& lift : expect) {
      expect_keys.insert({lift.chat ? 1 : 0, lift.m, lift.n});
    }
    CHECK(got_keys == expect_keys);
  }
}

TEST_CASE("torus_geodesics sorted segments") {
  CylPoint x1{1.5, 0.0};
  CylPoint x2{0.5, 0.0};
  SUBCASE("single direct segment") {
    auto segs = torus_geodesics(x1, x2, 1.5, kP2);
    REQUIRE(segs.size() == 1);
    CHECK(segs[0].flat_length == doctest::Approx(1.0));
  }
  SUBCASE("just above the twisted length") {
    double lt0 = std::sqrt(4.0 + kPi * kPi);
    auto segs = torus_geodesics(x1, x2, lt0 + 1e-6, kP2);
    bool found = false;
    for (const PlaneSegment& s : segs) {
      if (s.target.tag == LiftTag::Chat && std::fabs(s.flat_length - lt0) < 1e-12) found = true;
    }
    CHECK(found);
    for (std::size_t i = 1; i < segs.size(); ++i) {
      CHECK(segs[i - 1].flat_length <= segs[i].flat_length + 1e-15);
    }
  }
  SUBCASE("coincident endpoints exclude the zero segment") {
    CylPoint x{1.0, 0.0};
    auto segs = torus_geodesics(x, x, kTwoPi + 0.1, kP2);
    int pure_theta = 0;
    for (const PlaneSegment& s : segs) {
      CHECK(s.flat_length > 1e-12);
      if (std::fabs(s.flat_length - kTwoPi) < 1e-12 && s.target.tag == LiftTag::C) ++pure_theta;
    }
    CHECK(pure_theta == 2);
  }
}

TEST_CASE("torus midpoint classes: worked example and completeness") {
  SUBCASE("standard configuration residues") {
    auto mids = torus_midpoint_classes(CylPoint{1.5, 0.0}, CylPoint{0.5, 0.0}, kP2);
    REQUIRE(mids.size() == 8);
    Lattice lat = Lattice::from(kP2);
    std::array<PlanePoint, 4> expect_c{PlanePoint{1.0, 0.0}, PlanePoint{3.0, 0.0},
                                       PlanePoint{1.0, kPi}, PlanePoint{3.0, kPi}};
    for (const PlanePoint& e : expect_c) {
      bool found = false;
      for (const TorusMidpoint& mid : mids) {
        if (mid.target == LiftTag::C && lat.congruent(mid.residue, e, 1e-12)) found = true;
      }
      CHECK(found);
    }
  }
  SUBCASE("coincident endpoints contain the point itself") {
    CylPoint x{1.0, 1.3};
    auto mids = torus_midpoint_classes(x, x, kP2);
    Lattice lat = Lattice::from(kP2);
    bool found = false;
    for (const TorusMidpoint& mid : mids) {
      if (mid.target == LiftTag::C && lat.congruent(mid.residue, PlanePoint{x.t, x.theta}, 1e-12)) {
        found = true;
      }
    }
    CHECK(found);
  }
  SUBCASE("equal heights put the twisted residues on the equators") {
    auto mids = torus_midpoint_classes(CylPoint{0.8, 0.2}, CylPoint{0.8, 2.0}, kP2);
    for (const TorusMidpoint& mid : mids) {
      if (mid.target == LiftTag::Chat) {
        NPoint folded = fold_to_n(mid.residue, kP2);
        CHECK(std::min(folded.t, kP2.l - folded.t) < 1e-12);
      }
    }
  }
  SUBCASE("every segment midpoint is congruent to a class residue") {
    auto gen = oracles::rng(15);
    for (int trial = 0; trial < 50; ++trial) {
      SurfaceParams params{std::uniform_real_distribution<double>(1.0, 4.0)(gen)};
      CylPoint x1 = oracles::random_interior(gen, params);
      CylPoint x2 = oracles::random_interior(gen, params);
      auto mids = torus_midpoint_classes(x1, x2, params);
      Lattice lat = Lattice::from(params);
      auto lifts = oracles::brute_lifts(x2, PlanePoint{x1.t, x1.theta}, 60.0, params,
                                        oracles::brute_bound(60.0, params));
      for (const auto& lift : lifts) {
        PlanePoint mid{(x1.t + lift.point.t) / 2.0, (x1.theta + lift.point.theta) / 2.0};
        LiftTag target = lift.chat ? LiftTag::Chat : LiftTag::C;
        bool matched = false;
        for (const TorusMidpoint& cls : mids) {
          if (cls.target == target && lat.congruent(cls.residue, mid, 1e-9)) matched = true;
        }
        CHECK(matched);
      }
    }
  }
}

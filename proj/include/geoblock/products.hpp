#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "geoblock/blocking.hpp"
#include "geoblock/surface_n.hpp"

namespace geoblock {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double angle_between(const Vec3& a, const Vec3& b);

/// Great circle through the base point traversed k full times. Passes the
/// antipode exactly at odd multiples of pi of arclength, so the midpoint is
/// the antipode for odd k and the base point for even k.
struct SphereLoopGeodesic {
  double psi = 0.0;  // initial direction
  int k = 1;         // loops >= 1, length 2*pi*k
};

/// Round unit sphere; configurations are restricted to (p, p) with p the
/// north pole. Enumeration returns one representative direction per loop
/// count (the direction family is a continuum).
class SphereModel {
 public:
  using Point = Vec3;
  using Geodesic = SphereLoopGeodesic;

  static Point north();
  static Point south();

  std::vector<Geodesic> enumerate(const Point& a, const Point& b, double l_max) const;
  Point evaluate(const Geodesic& g, double u) const;
  std::vector<double> hit_times(const Geodesic& g, const Point& b, double eps) const;
  double distance(const Point& a, const Point& b) const;
  double length(const Geodesic& g) const;

  double representative_psi = 0.0;
};

/// A loop direction whose k=1 circle meets the candidate set nowhere in its
/// interior except possibly the pole pair. Exists because each other point
/// excludes a single direction mod pi.
SphereLoopGeodesic find_clean_great_circle(const std::vector<Vec3>& candidates);

/// Flat torus R^2 / <(2l,0),(0,2pi)> as a standalone factor space (points are
/// canonical plane representatives).
class TorusModel {
 public:
  using Point = PlanePoint;
  struct Geodesic {
    PlanePoint start;
    PlanePoint target_lift;
    double len = 0.0;
    int m = 0;
    int n = 0;
    bool primitive = true;
  };

  explicit TorusModel(const SurfaceParams& params)
      : params_(params), lattice_(Lattice::from(params)) {}

  std::vector<Geodesic> enumerate(const Point& a, const Point& b, double l_max) const;
  Point evaluate(const Geodesic& g, double u) const;
  std::vector<double> hit_times(const Geodesic& g, const Point& b, double eps) const;
  double distance(const Point& a, const Point& b) const;
  double length(const Geodesic& g) const { return g.len; }

  /// The 4 midpoint residues mod the lattice (security threshold 4).
  std::vector<Point> midpoint_set(const Point& a, const Point& b) const;
  const Lattice& lattice() const { return lattice_; }

 private:
  SurfaceParams params_;
  Lattice lattice_;
};

/// The capped surface as a factor space; configurations need interior
/// cylinder points.
class NModel {
 public:
  using Point = NPoint;
  using Geodesic = NGeodesic;

  explicit NModel(const SurfaceParams& params) : params_(params) {}

  std::vector<Geodesic> enumerate(const Point& a, const Point& b, double l_max) const;
  Point evaluate(const Geodesic& g, double u) const { return point_at(g, u); }
  std::vector<double> hit_times(const Geodesic& g, const Point& b, double eps) const {
    return blocking_times(g, b, eps);
  }
  double distance(const Point& a, const Point& b) const {
    return surface_distance(a, b, params_, 1e-3);
  }
  double length(const Geodesic& g) const { return g.n_length; }
  const SurfaceParams& params() const { return params_; }

 private:
  SurfaceParams params_;
};

/// Pair of factor geodesics on a common [0,1] parameter; either factor may be
/// a constant path (but not both).
template <class M1, class M2>
struct ProductGeodesic {
  std::optional<typename M1::Geodesic> g1;
  std::optional<typename M2::Geodesic> g2;
  typename M1::Point c1{};  // constant-factor points, used when g1/g2 absent
  typename M2::Point c2{};
  double len1 = 0.0;
  double len2 = 0.0;

  double length() const { return std::hypot(len1, len2); }
};

template <class M1, class M2>
struct ProductBlockingSet {
  std::vector<std::pair<typename M1::Point, typename M2::Point>> pairs;
  double eps = 1e-9;
};

struct ProductWitness {
  std::size_t pair_index = 0;
  double u = 0.0;
};

inline constexpr double kCoincideTol = 1e-12;

template <class M1, class M2>
std::vector<ProductGeodesic<M1, M2>> product_geodesics(
    const M1& m1, const typename M1::Point& a1, const typename M1::Point& b1,
    const M2& m2, const typename M2::Point& a2, const typename M2::Point& b2,
    double l_max) {
  const bool const1 = m1.distance(a1, b1) <= kCoincideTol;
  const bool const2 = m2.distance(a2, b2) <= kCoincideTol;
  auto g1s = m1.enumerate(a1, b1, l_max);
  auto g2s = m2.enumerate(a2, b2, l_max);
  std::vector<ProductGeodesic<M1, M2>> out;
  for (const auto& g1 : g1s) {
    for (const auto& g2 : g2s) {
      double len = std::hypot(m1.length(g1), m2.length(g2));
      if (len > l_max) continue;
      ProductGeodesic<M1, M2> pg;
      pg.g1 = g1;
      pg.g2 = g2;
      pg.c1 = a1;
      pg.c2 = a2;
      pg.len1 = m1.length(g1);
      pg.len2 = m2.length(g2);
      out.push_back(std::move(pg));
    }
  }
  if (const1) {
    for (const auto& g2 : g2s) {
      if (m2.length(g2) > l_max) continue;
      ProductGeodesic<M1, M2> pg;
      pg.g2 = g2;
      pg.c1 = a1;
      pg.c2 = a2;
      pg.len2 = m2.length(g2);
      out.push_back(std::move(pg));
    }
  }
  if (const2) {
    for (const auto& g1 : g1s) {
      if (m1.length(g1) > l_max) continue;
      ProductGeodesic<M1, M2> pg;
      pg.g1 = g1;
      pg.c1 = a1;
      pg.c2 = a2;
      pg.len1 = m1.length(g1);
      out.push_back(std::move(pg));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.length() < b.length(); });
  return out;
}

namespace detail {

struct FactorHits {
  bool always = false;  // constant factor sitting on the point
  std::vector<double> times;
};

template <class M>
FactorHits factor_hits(const M& model, const std::optional<typename M::Geodesic>& g,
                       const typename M::Point& constant, const typename M::Point& b,
                       double eps) {
  FactorHits h;
  if (!g) {
    h.always = model.distance(constant, b) <= eps;
    return h;
  }
  h.times = model.hit_times(*g, b, eps);
  return h;
}

inline std::optional<double> matched_time(const FactorHits& h1, const FactorHits& h2,
                                          double delta) {
  if (h1.always && h2.always) return std::nullopt;  // excluded upstream
  if (h1.always) return h2.times.empty() ? std::nullopt : std::optional<double>(h2.times.front());
  if (h2.always) return h1.times.empty() ? std::nullopt : std::optional<double>(h1.times.front());
  std::size_t i = 0, j = 0;
  while (i < h1.times.size() && j < h2.times.size()) {
    double a = h1.times[i], b = h2.times[j];
    if (std::fabs(a - b) <= delta) return (a + b) / 2.0;
    if (a < b) ++i; else ++j;
  }
  return std::nullopt;
}

}  // namespace detail

/// True with a witness iff some candidate pair is hit by both factors at the
/// same interior time (within delta on the normalized parameter).
template <class M1, class M2>
std::optional<ProductWitness> is_product_blocked(const ProductGeodesic<M1, M2>& pg,
                                                 const ProductBlockingSet<M1, M2>& set,
                                                 const M1& m1, const M2& m2,
                                                 double delta = 1e-6) {
  for (std::size_t idx = 0; idx < set.pairs.size(); ++idx) {
    auto h1 = detail::factor_hits(m1, pg.g1, pg.c1, set.pairs[idx].first, set.eps);
    auto h2 = detail::factor_hits(m2, pg.g2, pg.c2, set.pairs[idx].second, set.eps);
    if (auto u = detail::matched_time(h1, h2, delta)) {
      return ProductWitness{idx, *u};
    }
  }
  return std::nullopt;
}

/// Cartesian product of factor midpoint sets, each augmented with its own
/// endpoint when the factor configuration is degenerate.
template <class M1, class M2>
ProductBlockingSet<M1, M2> midpoint_product_set(
    std::vector<typename M1::Point> b1, std::vector<typename M2::Point> b2,
    const M1& m1, const typename M1::Point& a1, const typename M1::Point& y1,
    const M2& m2, const typename M2::Point& a2, const typename M2::Point& y2,
    double eps = 1e-9) {
  auto contains1 = [&](const typename M1::Point& p) {
    for (const auto& q : b1) if (m1.distance(p, q) <= eps) return true;
    return false;
  };
  auto contains2 = [&](const typename M2::Point& p) {
    for (const auto& q : b2) if (m2.distance(p, q) <= eps) return true;
    return false;
  };
  if (m1.distance(a1, y1) <= kCoincideTol && !contains1(a1)) b1.push_back(a1);
  if (m2.distance(a2, y2) <= kCoincideTol && !contains2(a2)) b2.push_back(a2);
  ProductBlockingSet<M1, M2> set;
  set.eps = eps;
  for (const auto& p : b1) {
    for (const auto& q : b2) set.pairs.push_back({p, q});
  }
  return set;
}

/// Coordinate projections with the factor endpoints removed (the product
/// blocking set of a secure product configuration projects to factor
/// blocking sets this way).
template <class M1, class M2>
std::pair<std::vector<typename M1::Point>, std::vector<typename M2::Point>>
project_blocking_set(const ProductBlockingSet<M1, M2>& set,
                     const M1& m1, const typename M1::Point& x1, const typename M1::Point& y1,
                     const M2& m2, const typename M2::Point& x2, const typename M2::Point& y2) {
  std::vector<typename M1::Point> b1;
  std::vector<typename M2::Point> b2;
  for (const auto& pair : set.pairs) {
    if (m1.distance(pair.first, x1) > set.eps && m1.distance(pair.first, y1) > set.eps) {
      bool dup = false;
      for (const auto& q : b1) if (m1.distance(pair.first, q) <= set.eps) dup = true;
      if (!dup) b1.push_back(pair.first);
    }
    if (m2.distance(pair.second, x2) > set.eps && m2.distance(pair.second, y2) > set.eps) {
      bool dup = false;
      for (const auto& q : b2) if (m2.distance(pair.second, q) <= set.eps) dup = true;
      if (!dup) b2.push_back(pair.second);
    }
  }
  return {b1, b2};
}

template <class M2>
struct InsecurityCertificate {
  bool found = false;
  int index = -1;       // winding index of the surface-side geodesic
  int tried = 0;
  double min_gap = kInfinity;
  std::optional<NGeodesic> gamma;
  std::optional<typename M2::Geodesic> sigma;
};

/// Search the one-cap family for a member whose hit times against the first
/// projection avoid the partner geodesic's hit times against the second
/// projection; the unblocked product witness is re-verified before returning.
template <class M2>
InsecurityCertificate<M2> demonstrate_product_insecurity(
    const CylPoint& x1, const CylPoint& x2, const SurfaceParams& params,
    const M2& m2, const typename M2::Point& y1, const typename M2::Point& y2,
    const ProductBlockingSet<NModel, M2>& candidate, int budget,
    double delta = 1e-6, double eps = 1e-9) {
  if (budget < 1) throw std::invalid_argument("search budget must be >= 1");
  InsecurityCertificate<M2> cert;
  NModel m1(params);

  std::vector<NPoint> b_n;
  std::vector<typename M2::Point> b_m;
  for (const auto& pair : candidate.pairs) {
    b_n.push_back(pair.first);
    b_m.push_back(pair.second);
  }

  typename M2::Geodesic sigma;
  if constexpr (std::is_same_v<M2, SphereModel>) {
    sigma = find_clean_great_circle(b_m);
  } else {
    double horizon = 8.0;
    std::vector<typename M2::Geodesic> found;
    while (found.empty() && horizon < 1e6) {
      found = m2.enumerate(y1, y2, horizon);
      horizon *= 2.0;
    }
    if (found.empty()) throw std::domain_error("no factor geodesic found");
    sigma = found.front();
  }
  cert.sigma = sigma;

  std::vector<double> t_sigma;
  for (const auto& b : b_m) {
    auto ts = m2.hit_times(sigma, b, eps);
    t_sigma.insert(t_sigma.end(), ts.begin(), ts.end());
  }
  std::sort(t_sigma.begin(), t_sigma.end());

  for (int i = 0; i <= budget; ++i) {
    cert.tried = i + 1;
    NGeodesic gamma = gamma_i(x1, x2, i, params);
    std::vector<double> t_gamma;
    for (const auto& b : b_n) {
      auto ts = blocking_times(gamma, b, eps);
      t_gamma.insert(t_gamma.end(), ts.begin(), ts.end());
    }
    std::sort(t_gamma.begin(), t_gamma.end());
    double gap = kInfinity;
    for (double a : t_gamma) {
      for (double b : t_sigma) gap = std::min(gap, std::fabs(a - b));
    }
    if (gap <= 10.0 * delta) continue;

    ProductGeodesic<NModel, M2> pg;
    pg.g1 = gamma;
    pg.g2 = sigma;
    pg.c1 = to_npoint(x1);
    pg.c2 = y1;
    pg.len1 = gamma.n_length;
    pg.len2 = m2.length(sigma);
    if (is_product_blocked(pg, candidate, m1, m2, delta)) continue;
    cert.found = true;
    cert.index = i;
    cert.min_gap = gap;
    cert.gamma = std::move(gamma);
    return cert;
  }
  return cert;
}

}  // namespace geoblock

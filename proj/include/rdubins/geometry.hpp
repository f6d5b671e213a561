#pragma once

// Planar primitives for bounded-curvature path planning over polygonal
// region maps: poses, convex regions with per-region speed and turning
// radius, shared-edge adjacency, boundary-aligned frames, and closed-form
// propagation of the unicycle dynamics
//
//   x' = v sin(theta),  y' = v cos(theta),  theta' = u,  |u| <= v/r.
//
// Headings are measured from the +y axis, so theta = 0 points "up" and
// increasing theta turns the velocity vector clockwise (toward +x).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rdubins {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance for point-on-edge decisions, in length units.
inline constexpr double kLocateTol = 1e-9;

/// Normalizes an angle to (-pi, pi].
inline double normalize_angle(double a) {
  a = std::remainder(a, kTwoPi);
  if (a <= -kPi) a += kTwoPi;
  return a;
}

/// Wraps an angle to [0, 2*pi), snapping values within 1e-11 of 2*pi to 0
/// so that degenerate (zero-length) pieces do not round up to full circles.
inline double mod_two_pi(double a) {
  a -= kTwoPi * std::floor(a / kTwoPi);
  if (a >= kTwoPi - 1e-11 || a < 0.0) a = 0.0;
  return a;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

/// Planar pose. theta is stored normalized to (-pi, pi]; the velocity
/// direction is (sin theta, cos theta).
struct Configuration {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Configuration() = default;
  Configuration(double x_, double y_, double theta_)
      : x(x_), y(y_), theta(normalize_angle(theta_)) {}

  Vec2 position() const { return {x, y}; }
  Vec2 direction() const { return {std::sin(theta), std::cos(theta)}; }
};

/// Path piece kinds. C+ is the clockwise circle (u = +u_max), C- the
/// counter-clockwise circle (u = -u_max), L the straight line (u = 0).
/// Enumerator order defines the lexicographic word order C- < C+ < L.
enum class SegmentKind : int { CcwArc = 0, CwArc = 1, Straight = 2 };

inline int control_sign(SegmentKind k) {
  switch (k) {
    case SegmentKind::CwArc: return 1;
    case SegmentKind::CcwArc: return -1;
    default: return 0;
  }
}

inline SegmentKind mirrored(SegmentKind k) {
  switch (k) {
    case SegmentKind::CwArc: return SegmentKind::CcwArc;
    case SegmentKind::CcwArc: return SegmentKind::CwArc;
    default: return SegmentKind::Straight;
  }
}

inline const char* to_string(SegmentKind k) {
  switch (k) {
    case SegmentKind::CwArc: return "C+";
    case SegmentKind::CcwArc: return "C-";
    default: return "L";
  }
}

inline SegmentKind segment_kind_from_string(const std::string& s) {
  if (s == "C+") return SegmentKind::CwArc;
  if (s == "C-") return SegmentKind::CcwArc;
  if (s == "L") return SegmentKind::Straight;
  throw std::invalid_argument("unknown segment kind: " + s);
}

/// Exact endpoint of motion from `c` under constant control for `duration`
/// time units: u = 0 for L, u = +/-u_max for C+/C-, speed v throughout.
inline Configuration propagate(const Configuration& c, SegmentKind kind,
                               double duration, double v, double u_max) {
  if (duration < 0.0)
    throw std::invalid_argument("propagate: negative duration");
  if (kind == SegmentKind::Straight) {
    return {c.x + v * duration * std::sin(c.theta),
            c.y + v * duration * std::cos(c.theta), c.theta};
  }
  const double u = control_sign(kind) * u_max;
  const double th1 = c.theta + u * duration;
  const double k = v / u;
  return {c.x + k * (std::cos(c.theta) - std::cos(th1)),
          c.y + k * (std::sin(th1) - std::sin(c.theta)), th1};
}

// ---------------------------------------------------------------------------
// Polygons and regions

using Polygon = std::vector<Vec2>;

inline double polygon_area(const Polygon& p) {
  double a = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Vec2& u = p[i];
    const Vec2& w = p[(i + 1) % p.size()];
    a += cross(u, w);
  }
  return 0.5 * a;
}

/// Signed distance from a point to the polygon treating edges as inner
/// half-plane boundaries: positive strictly inside a convex ccw polygon,
/// negative outside. Exact for convex polygons near the boundary.
inline double signed_inset(const Polygon& poly, Vec2 pt) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    const Vec2 e = b - a;
    const double len = norm(e);
    m = std::min(m, cross(e, pt - a) / len);
  }
  return m;
}

inline bool contains(const Polygon& poly, Vec2 pt, double tol = kLocateTol) {
  return signed_inset(poly, pt) >= -tol;
}

inline void validate_convex_ccw(const Polygon& poly) {
  if (poly.size() < 3)
    throw std::invalid_argument("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    const Vec2 c = poly[(i + 2) % poly.size()];
    if (distance(a, b) < 1e-12)
      throw std::invalid_argument("polygon has repeated vertices");
    if (cross(b - a, c - b) <= 0.0)
      throw std::invalid_argument("polygon must be strictly convex and ccw");
  }
  if (polygon_area(poly) <= 1e-12)
    throw std::invalid_argument("polygon has empty interior");
}

/// Convex polygonal region with constant travel speed v and minimum turning
/// radius r; the angular-rate bound is u_max = v / r.
struct Region {
  int id = -1;
  Polygon polygon;
  double v = 1.0;
  double r = 1.0;
  double u_max = 1.0;

  Region() = default;
  Region(int id_, Polygon poly, double v_, double r_)
      : id(id_), polygon(std::move(poly)), v(v_), r(r_), u_max(v_ / r_) {
    if (v <= 0.0) throw std::invalid_argument("region speed must be > 0");
    if (r <= 0.0) throw std::invalid_argument("region radius must be > 0");
    validate_convex_ccw(polygon);
  }
};

/// Shared straight edge between two regions (positive length).
struct Adjacency {
  int a = -1;  // region ids, a < b
  int b = -1;
  Vec2 p0;
  Vec2 p1;

  Vec2 tangent() const {
    const Vec2 d = p1 - p0;
    const double len = norm(d);
    return {d.x / len, d.y / len};
  }
  double length() const { return distance(p0, p1); }
};

namespace detail {

// Clips a convex polygon against the inner side of the directed line a->b.
inline Polygon clip_half_plane(const Polygon& poly, Vec2 a, Vec2 b) {
  Polygon out;
  const Vec2 e = b - a;
  auto side = [&](Vec2 p) { return cross(e, p - a); };
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 cur = poly[i];
    const Vec2 nxt = poly[(i + 1) % poly.size()];
    const double sc = side(cur), sn = side(nxt);
    if (sc >= 0.0) out.push_back(cur);
    if ((sc > 0.0 && sn < 0.0) || (sc < 0.0 && sn > 0.0)) {
      const double t = sc / (sc - sn);
      out.push_back(cur + t * (nxt - cur));
    }
  }
  return out;
}

inline double intersection_area(const Polygon& p, const Polygon& q) {
  Polygon acc = p;
  for (std::size_t i = 0; i < q.size() && !acc.empty(); ++i)
    acc = clip_half_plane(acc, q[i], q[(i + 1) % q.size()]);
  return acc.size() >= 3 ? std::abs(polygon_area(acc)) : 0.0;
}

// Overlap of two collinear segments, or zero-length if none.
inline bool collinear_overlap(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1, Vec2& o0,
                              Vec2& o1) {
  const Vec2 da = a1 - a0;
  const double len = norm(da);
  const Vec2 t{da.x / len, da.y / len};
  if (std::abs(cross(t, b0 - a0)) > 1e-9 || std::abs(cross(t, b1 - a0)) > 1e-9)
    return false;
  double lo = 0.0, hi = len;
  double u0 = dot(t, b0 - a0), u1 = dot(t, b1 - a0);
  if (u0 > u1) std::swap(u0, u1);
  lo = std::max(lo, u0);
  hi = std::min(hi, u1);
  if (hi - lo <= 1e-9) return false;
  o0 = a0 + lo * t;
  o1 = a0 + hi * t;
  return true;
}

}  // namespace detail

/// Result of locating a point in a region map.
struct Locate {
  enum class Kind { Interior, Boundary, Outside } kind = Kind::Outside;
  int region = -1;  // Interior: the region; Boundary: lower region id
  int other = -1;   // Boundary: higher region id

  bool interior() const { return kind == Kind::Interior; }
  bool outside() const { return kind == Kind::Outside; }
};

/// Partition of the plane into convex regions with shared-edge adjacency.
/// Construction validates disjoint interiors, positive-length shared edges,
/// and connectivity of the union.
struct RegionMap {
  std::vector<Region> regions;
  std::vector<Adjacency> adjacency;

  const Region& region(int id) const {
    for (const Region& rg : regions)
      if (rg.id == id) return rg;
    throw std::out_of_range("unknown region id " + std::to_string(id));
  }

  const Adjacency* shared_edge(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (const Adjacency& ad : adjacency)
      if (ad.a == a && ad.b == b) return &ad;
    return nullptr;
  }

  std::vector<int> neighbors(int id) const {
    std::vector<int> out;
    for (const Adjacency& ad : adjacency) {
      if (ad.a == id) out.push_back(ad.b);
      if (ad.b == id) out.push_back(ad.a);
    }
    return out;
  }
};

inline RegionMap build_region_map(std::vector<Region> regions) {
  if (regions.empty()) throw std::invalid_argument("region map is empty");
  for (std::size_t i = 0; i < regions.size(); ++i)
    for (std::size_t j = i + 1; j < regions.size(); ++j) {
      if (regions[i].id == regions[j].id)
        throw std::invalid_argument("duplicate region id " +
                                    std::to_string(regions[i].id));
      if (detail::intersection_area(regions[i].polygon, regions[j].polygon) >
          1e-9)
        throw std::invalid_argument(
            "regions " + std::to_string(regions[i].id) + " and " +
            std::to_string(regions[j].id) + " have overlapping interiors");
    }

  RegionMap map;
  map.regions = std::move(regions);
  for (std::size_t i = 0; i < map.regions.size(); ++i)
    for (std::size_t j = i + 1; j < map.regions.size(); ++j) {
      const Polygon& p = map.regions[i].polygon;
      const Polygon& q = map.regions[j].polygon;
      Vec2 best0, best1;
      double best = 0.0;
      for (std::size_t ei = 0; ei < p.size(); ++ei)
        for (std::size_t ej = 0; ej < q.size(); ++ej) {
          Vec2 o0, o1;
          if (detail::collinear_overlap(p[ei], p[(ei + 1) % p.size()], q[ej],
                                        q[(ej + 1) % q.size()], o0, o1) &&
              distance(o0, o1) > best) {
            best = distance(o0, o1);
            best0 = o0;
            best1 = o1;
          }
        }
      if (best > 0.0) {
        Adjacency ad;
        ad.a = std::min(map.regions[i].id, map.regions[j].id);
        ad.b = std::max(map.regions[i].id, map.regions[j].id);
        ad.p0 = best0;
        ad.p1 = best1;
        map.adjacency.push_back(ad);
      }
    }

  // The union must be connected through shared edges.
  if (map.regions.size() > 1) {
    std::vector<int> seen{map.regions.front().id};
    std::vector<int> queue = seen;
    while (!queue.empty()) {
      const int cur = queue.back();
      queue.pop_back();
      for (int nb : map.neighbors(cur))
        if (std::find(seen.begin(), seen.end(), nb) == seen.end()) {
          seen.push_back(nb);
          queue.push_back(nb);
        }
    }
    if (seen.size() != map.regions.size())
      throw std::invalid_argument("region map union is not connected");
  }
  return map;
}

/// Locates a point: the unique region whose closed polygon contains it, the
/// adjacent pair when the point lies on a shared edge, or Outside. Total.
inline Locate locate(Vec2 pt, const RegionMap& map) {
  int first = -1, second = -1;
  bool first_interior = false;
  for (const Region& rg : map.regions) {
    const double d = signed_inset(rg.polygon, pt);
    if (d > kLocateTol) {
      return {Locate::Kind::Interior, rg.id, -1};
    }
    if (d >= -kLocateTol) {
      if (first < 0) {
        first = rg.id;
        first_interior = d > kLocateTol;
      } else if (second < 0) {
        second = rg.id;
      }
    }
  }
  (void)first_interior;
  if (first < 0) return {};
  if (second < 0) return {Locate::Kind::Interior, first, -1};
  if (first > second) std::swap(first, second);
  return {Locate::Kind::Boundary, first, second};
}

// ---------------------------------------------------------------------------
// Boundary frames

/// Rotation-plus-translation frame attached to a boundary crossing point.
/// phi is the heading (from +y) of the boundary normal, so that in the frame
/// the boundary tangent is horizontal (y' = 0), the anchor is the origin,
/// and headings transform as theta' = theta - phi.
struct BoundaryFrame {
  Vec2 anchor;
  double phi = 0.0;
};

inline Configuration to_boundary_frame(const Configuration& c,
                                       const BoundaryFrame& f) {
  const double dx = c.x - f.anchor.x;
  const double dy = c.y - f.anchor.y;
  const double cp = std::cos(f.phi), sp = std::sin(f.phi);
  return {cp * dx - sp * dy, sp * dx + cp * dy, c.theta - f.phi};
}

inline Configuration from_boundary_frame(const Configuration& c,
                                         const BoundaryFrame& f) {
  const double cp = std::cos(f.phi), sp = std::sin(f.phi);
  return {f.anchor.x + cp * c.x + sp * c.y, f.anchor.y - sp * c.x + cp * c.y,
          c.theta + f.phi};
}

/// Frame at `anchor` on the edge a->b whose +y' normal points into `into`:
/// boundary-frame heading theta* = 0 crosses the edge orthogonally toward
/// the `into` side.
inline BoundaryFrame frame_on_edge(Vec2 anchor, Vec2 edge_a, Vec2 edge_b,
                                   const Polygon& into) {
  Vec2 t = edge_b - edge_a;
  const double len = norm(t);
  t = {t.x / len, t.y / len};
  Vec2 n{-t.y, t.x};
  // Probe a point slightly along the normal; flip if it lands outside.
  const double probe = std::max(1e-6, 1e-6 * len);
  if (signed_inset(into, anchor + probe * n) <
      signed_inset(into, anchor - probe * n)) {
    t = {-t.x, -t.y};
    n = {-n.x, -n.y};
  }
  return {anchor, normalize_angle(-std::atan2(t.y, t.x))};
}

}  // namespace rdubins

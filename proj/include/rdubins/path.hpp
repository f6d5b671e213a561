#pragma once

// Multi-region path solutions over a hybrid time domain. A path is a list
// of phases (one per visited region, consecutive regions distinct), each a
// concatenation of at most three C/L segments; crossings between phases
// carry the boundary-frame geometry needed by the refraction checks. The
// containment checks here are exact for convex regions: straight pieces by
// endpoint convexity, arcs by closed-form extremal excursion per edge.

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdubins/dubins.hpp"
#include "rdubins/geometry.hpp"
#include "rdubins/refraction.hpp"

namespace rdubins {

struct NoFeasiblePath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One constant-control piece: kind, time duration, region it belongs to.
struct Segment {
  SegmentKind kind = SegmentKind::Straight;
  double duration = 0.0;
  int region = -1;
};

/// Maximal subpath within a single region.
struct Phase {
  int region = -1;
  std::vector<Segment> segments;

  double duration() const {
    double t = 0.0;
    for (const Segment& s : segments) t += s.duration;
    return t;
  }
};

/// A finite concatenation of C/L segments across regions, with the hybrid
/// time domain t_0 = 0 < t_1 < ... < t_J = T and one crossing record per
/// phase change. Positions and headings are continuous throughout.
struct PathSolution {
  Configuration start;
  std::vector<Phase> phases;
  std::vector<CrossingRecord> crossings;  // phases.size() - 1 entries
  std::vector<double> jump_times;         // t_0 .. t_J
  double total_time = 0.0;

  std::vector<int> region_sequence() const {
    std::vector<int> q;
    q.reserve(phases.size());
    for (const Phase& ph : phases) q.push_back(ph.region);
    return q;
  }

  std::string route_signature() const {
    std::string s;
    for (const Phase& ph : phases) {
      if (!s.empty()) s += '-';
      s += std::to_string(ph.region);
    }
    return s;
  }
};

inline double path_time(const PathSolution& p) { return p.total_time; }

/// Endpoint after running one segment from `c` with region parameters.
inline Configuration advance(const Configuration& c, const Segment& s,
                             const Region& rg) {
  return propagate(c, s.kind, s.duration, rg.v, rg.u_max);
}

inline Configuration path_endpoint(const PathSolution& p,
                                   const RegionMap& map) {
  Configuration cur = p.start;
  for (const Phase& ph : p.phases) {
    const Region& rg = map.region(ph.region);
    for (const Segment& s : ph.segments) cur = advance(cur, s, rg);
  }
  return cur;
}

/// Timestamped pose sample along a path.
struct PathSample {
  double t = 0.0;
  int j = 0;
  int q = -1;
  Configuration c;
  double u = 0.0;
  SegmentKind kind = SegmentKind::Straight;
};

/// Samples the path with `per_unit` samples per unit of arc length (at least
/// two per segment), always including both endpoints of every segment.
inline std::vector<PathSample> sample_path(const PathSolution& p,
                                           const RegionMap& map,
                                           double per_unit = 20.0) {
  std::vector<PathSample> out;
  Configuration cur = p.start;
  double t = 0.0;
  for (std::size_t j = 0; j < p.phases.size(); ++j) {
    const Phase& ph = p.phases[j];
    const Region& rg = map.region(ph.region);
    for (const Segment& s : ph.segments) {
      const double u = control_sign(s.kind) * rg.u_max;
      const double len = s.duration * rg.v;
      const int n = std::max(2, static_cast<int>(std::ceil(len * per_unit)));
      for (int i = 0; i <= n; ++i) {
        const double tau = s.duration * i / n;
        out.push_back({t + tau, static_cast<int>(j), rg.id,
                       propagate(cur, s.kind, tau, rg.v, rg.u_max), u,
                       s.kind});
      }
      cur = advance(cur, s, rg);
      t += s.duration;
    }
  }
  return out;
}

namespace detail {

// Exact minimum of the signed inset of one segment against a convex region.
inline double segment_min_inset(const Configuration& c0, const Segment& s,
                                const Region& rg) {
  const Polygon& poly = rg.polygon;
  double min_inset = std::numeric_limits<double>::infinity();
  const Configuration c1 = advance(c0, s, rg);
  if (s.kind == SegmentKind::Straight || s.duration <= 0.0) {
    // Convexity: a straight piece attains its extremes at its endpoints.
    return std::min(signed_inset(poly, c0.position()),
                    signed_inset(poly, c1.position()));
  }
  const double u = control_sign(s.kind) * rg.u_max;
  const double k = rg.v / u;
  const Vec2 center{c0.x + k * std::cos(c0.theta),
                    c0.y - k * std::sin(c0.theta)};
  const double th0 = c0.theta;
  const double th1 = c0.theta + u * s.duration;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[(i + 1) % poly.size()];
    const Vec2 e = b - a;
    const double elen = norm(e);
    // inset(theta) = [cross(e, center - a) + k (e.x sin th + e.y cos th)]/|e|
    const double base = cross(e, center - a);
    auto val = [&](double th) {
      return (base + k * (e.x * std::sin(th) + e.y * std::cos(th))) / elen;
    };
    double edge_min = std::min(val(th0), val(th1));
    const double lo = std::min(th0, th1), hi = std::max(th0, th1);
    double crit = std::atan2(e.x, e.y);
    crit += kPi * std::ceil((lo - crit) / kPi);
    for (; crit <= hi; crit += kPi) edge_min = std::min(edge_min, val(crit));
    min_inset = std::min(min_inset, edge_min);
  }
  return min_inset;
}

}  // namespace detail

/// Largest excursion of any segment outside its phase region (0 when the
/// path is contained). Exact, not sampled.
inline double containment_violation(const PathSolution& p,
                                    const RegionMap& map) {
  double worst = 0.0;
  Configuration cur = p.start;
  for (const Phase& ph : p.phases) {
    const Region& rg = map.region(ph.region);
    for (const Segment& s : ph.segments) {
      worst = std::max(worst, -detail::segment_min_inset(cur, s, rg));
      cur = advance(cur, s, rg);
    }
  }
  return worst;
}

/// Builds crossing records and the hybrid time domain for phases already
/// laid out, classifying each crossing. Throws NoFeasiblePath if a phase
/// change does not land on the shared edge of the two regions.
inline void finalize_path(PathSolution& p, const RegionMap& map) {
  p.crossings.clear();
  p.jump_times.assign(1, 0.0);
  double t = 0.0;
  Configuration cur = p.start;
  for (std::size_t j = 0; j < p.phases.size(); ++j) {
    const Phase& ph = p.phases[j];
    const Region& rg = map.region(ph.region);
    for (const Segment& s : ph.segments) cur = advance(cur, s, rg);
    t += ph.duration();
    p.jump_times.push_back(t);
    if (j + 1 == p.phases.size()) break;

    const Region& next = map.region(p.phases[j + 1].region);
    const Adjacency* edge = map.shared_edge(rg.id, next.id);
    if (!edge)
      throw NoFeasiblePath("regions " + std::to_string(rg.id) + " and " +
                           std::to_string(next.id) + " are not adjacent");
    CrossingRecord rec;
    rec.region_p = rg.id;
    rec.region_pp = next.id;
    rec.frame = frame_on_edge(cur.position(), edge->p0, edge->p1,
                              next.polygon);
    rec.theta_star = to_boundary_frame(cur, rec.frame).theta;

    auto live = [](const std::vector<Segment>& v, bool from_back,
                   int skip) -> const Segment* {
      int seen = 0;
      for (std::size_t i = 0; i < v.size(); ++i) {
        const Segment& s = from_back ? v[v.size() - 1 - i] : v[i];
        if (s.duration <= 1e-12) continue;
        if (seen++ == skip) return &s;
      }
      return nullptr;
    };
    const Segment* a = live(ph.segments, true, 0);
    const Segment* a_prev = live(ph.segments, true, 1);
    const Segment* b = live(p.phases[j + 1].segments, false, 0);
    const Segment* b_next = live(p.phases[j + 1].segments, false, 1);

    if (a && a->kind != SegmentKind::Straight) {
      rec.d_theta_p = control_sign(a->kind) * rg.u_max * a->duration;
      if (a_prev && a_prev->kind == SegmentKind::Straight) {
        rec.has_incident_l = true;
        rec.theta_p = rec.theta_star - rec.d_theta_p;
      }
    } else if (a) {
      rec.has_incident_l = true;
      rec.theta_p = rec.theta_star;
    }
    if (b && b->kind != SegmentKind::Straight) {
      rec.d_theta_pp = control_sign(b->kind) * next.u_max * b->duration;
      if (b_next && b_next->kind == SegmentKind::Straight) {
        rec.has_emergent_l = true;
        rec.theta_pp = rec.theta_star + rec.d_theta_pp;
      }
    } else if (b) {
      rec.has_emergent_l = true;
      rec.theta_pp = rec.theta_star;
    }

    std::vector<SubpathPiece> pieces;
    for (const Segment& s : ph.segments)
      pieces.push_back({s.kind, s.duration, rg.id});
    for (const Segment& s : p.phases[j + 1].segments)
      pieces.push_back({s.kind, s.duration, next.id});
    const CrossingClass cls =
        classify_crossing(pieces, rec.theta_star, rg, next);
    rec.kind = cls.kind;
    p.crossings.push_back(rec);
  }
  p.total_time = t;
}

/// Structural and geometric admissibility of a finished path. Returns the
/// list of violations (empty when the path is valid).
inline std::vector<std::string> validate_path(const PathSolution& p,
                                              const RegionMap& map,
                                              double tol = 1e-7) {
  std::vector<std::string> out;
  if (p.phases.empty()) {
    out.push_back("path has no phases");
    return out;
  }
  for (std::size_t j = 0; j + 1 < p.phases.size(); ++j)
    if (p.phases[j].region == p.phases[j + 1].region)
      out.push_back("consecutive phases share a region");
  for (const Phase& ph : p.phases) {
    int live = 0;
    for (const Segment& s : ph.segments) {
      if (s.duration < 0.0) out.push_back("negative segment duration");
      if (s.duration > 1e-12) ++live;
    }
    if (live > 3)
      out.push_back("phase in region " + std::to_string(ph.region) +
                    " has more than three pieces");
  }

  const double excursion = containment_violation(p, map);
  if (excursion > tol)
    out.push_back("path leaves its phase region by " +
                  std::to_string(excursion));

  // A straight piece lying along a region boundary violates the
  // finite-boundary-time assumption.
  Configuration cur = p.start;
  for (const Phase& ph : p.phases) {
    const Region& rg = map.region(ph.region);
    for (const Segment& s : ph.segments) {
      const Configuration nxt = advance(cur, s, rg);
      if (s.kind == SegmentKind::Straight && s.duration > 1e-9) {
        for (const Adjacency& ad : map.adjacency) {
          const Vec2 te = ad.tangent();
          const Vec2 tl = cur.direction();
          if (std::abs(cross(te, tl)) < 1e-9 &&
              std::abs(cross(te, cur.position() - ad.p0)) < 1e-9) {
            Vec2 o0, o1;
            if (detail::collinear_overlap(cur.position(), nxt.position(),
                                          ad.p0, ad.p1, o0, o1))
              out.push_back("straight piece slides along boundary " +
                            std::to_string(ad.a) + "|" + std::to_string(ad.b));
          }
        }
      }
      cur = nxt;
    }
  }

  // Crossings must land strictly inside the shared edge and be admissible.
  for (std::size_t j = 0; j < p.crossings.size(); ++j) {
    const CrossingRecord& rec = p.crossings[j];
    const Adjacency* edge = map.shared_edge(rec.region_p, rec.region_pp);
    if (!edge) continue;  // reported by finalize_path already
    const double end_dist =
        std::min(distance(rec.frame.anchor, edge->p0),
                 distance(rec.frame.anchor, edge->p1));
    if (end_dist < 1e-9)
      out.push_back("crossing " + std::to_string(j) +
                    " grazes a polygon vertex");
    std::vector<SubpathPiece> pieces;
    for (const Segment& s : p.phases[j].segments)
      pieces.push_back({s.kind, s.duration, p.phases[j].region});
    for (const Segment& s : p.phases[j + 1].segments)
      pieces.push_back({s.kind, s.duration, p.phases[j + 1].region});
    const CrossingClass cls =
        classify_crossing(pieces, rec.theta_star, map.region(rec.region_p),
                          map.region(rec.region_pp));
    if (!cls.admissible)
      out.push_back("crossing " + std::to_string(j) +
                    " is a nonoptimal pattern: " + cls.reason);
  }
  return out;
}

/// Single-region minimum path as a PathSolution at unit speed.
inline PathSolution solve_dubins(const Configuration& start,
                                 const Configuration& goal, double r) {
  const DubinsCandidate best = shortest_dubins(start, goal, r);
  PathSolution p;
  p.start = start;
  Phase ph;
  ph.region = -1;
  for (int i = 0; i < 3; ++i)
    ph.segments.push_back({best.kinds[i], best.lengths[i], -1});
  p.phases.push_back(ph);
  p.jump_times = {0.0, best.total_length};
  p.total_time = best.total_length;
  return p;
}

/// Single-region minimum-time path inside `rg` (time = length / v).
inline PathSolution solve_dubins(const Configuration& start,
                                 const Configuration& goal, const Region& rg) {
  const DubinsCandidate best = shortest_dubins(start, goal, rg.r);
  PathSolution p;
  p.start = start;
  Phase ph;
  ph.region = rg.id;
  for (int i = 0; i < 3; ++i)
    ph.segments.push_back({best.kinds[i], best.lengths[i] / rg.v, rg.id});
  p.phases.push_back(ph);
  p.jump_times = {0.0, best.total_length / rg.v};
  p.total_time = best.total_length / rg.v;
  return p;
}

}  // namespace rdubins

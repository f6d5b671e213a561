#pragma once

// Exact single-region Dubins solver. Minimum-length paths between oriented
// poses under a minimum turning radius are concatenations of at most three
// pieces drawn from {C+, C-, L} and fall into six words:
//
//   C-C+C-, C+C-C+, C-LC-, C+LC+, C+LC-, C-LC+
//
// plus the degenerate subpaths where pieces shrink to zero length. The
// classical tangent constructions are computed in the normalized frame
// (start at origin, goal at distance d = D/r on the x axis); arc pieces
// are parameterized by swept angle, straight pieces by normalized length.

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "rdubins/geometry.hpp"

namespace rdubins {

/// One Dubins word candidate: three piece kinds with geometric lengths
/// (same units as the input poses; arcs of radius r).
struct DubinsCandidate {
  std::array<SegmentKind, 3> kinds{};
  std::array<double, 3> lengths{};
  double total_length = 0.0;

  std::string word() const {
    std::string w;
    for (SegmentKind k : kinds) w += to_string(k);
    return w;
  }
};

/// True if `a` precedes `b` in the deterministic candidate order: shorter
/// first, ties broken lexicographically by word spelling (C- < C+ < L).
inline bool candidate_precedes(const DubinsCandidate& a,
                               const DubinsCandidate& b) {
  const double tol = 1e-12 * (1.0 + std::min(a.total_length, b.total_length));
  if (a.total_length < b.total_length - tol) return true;
  if (b.total_length < a.total_length - tol) return false;
  for (int i = 0; i < 3; ++i) {
    if (a.kinds[i] != b.kinds[i])
      return static_cast<int>(a.kinds[i]) < static_cast<int>(b.kinds[i]);
  }
  return false;
}

namespace detail {

// Six-word constructions in the normalized frame. alpha and beta are the
// start and goal direction angles relative to the start->goal ray, in the
// standard convention where the first/last letter of LSL/RSR/... names the
// turn direction (L = ccw = our C-, R = cw = our C+).
struct WordParams {
  bool ok = false;
  double t = 0.0, p = 0.0, q = 0.0;
};

inline WordParams word_lsl(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double c_ab = std::cos(alpha - beta);
  double p_sq = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sa - sb);
  if (p_sq < -1e-12) return {};
  p_sq = std::max(p_sq, 0.0);
  const double tmp = std::atan2(cb - ca, d + sa - sb);
  return {true, mod_two_pi(-alpha + tmp), std::sqrt(p_sq),
          mod_two_pi(beta - tmp)};
}

inline WordParams word_rsr(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double c_ab = std::cos(alpha - beta);
  double p_sq = 2.0 + d * d - 2.0 * c_ab + 2.0 * d * (sb - sa);
  if (p_sq < -1e-12) return {};
  p_sq = std::max(p_sq, 0.0);
  const double tmp = std::atan2(ca - cb, d - sa + sb);
  return {true, mod_two_pi(alpha - tmp), std::sqrt(p_sq),
          mod_two_pi(-beta + tmp)};
}

inline WordParams word_lsr(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double c_ab = std::cos(alpha - beta);
  double p_sq = -2.0 + d * d + 2.0 * c_ab + 2.0 * d * (sa + sb);
  if (p_sq < -1e-12) return {};
  p_sq = std::max(p_sq, 0.0);
  const double p = std::sqrt(p_sq);
  const double tmp = std::atan2(-ca - cb, d + sa + sb) - std::atan2(-2.0, p);
  return {true, mod_two_pi(-alpha + tmp), p, mod_two_pi(-beta + tmp)};
}

inline WordParams word_rsl(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double c_ab = std::cos(alpha - beta);
  double p_sq = -2.0 + d * d + 2.0 * c_ab - 2.0 * d * (sa + sb);
  if (p_sq < -1e-12) return {};
  p_sq = std::max(p_sq, 0.0);
  const double p = std::sqrt(p_sq);
  const double tmp = std::atan2(ca + cb, d - sa - sb) - std::atan2(2.0, p);
  return {true, mod_two_pi(alpha - tmp), p, mod_two_pi(beta - tmp)};
}

inline WordParams word_rlr(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double c_ab = std::cos(alpha - beta);
  const double tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sa - sb)) / 8.0;
  if (std::abs(tmp) > 1.0) return {};
  const double p = mod_two_pi(kTwoPi - std::acos(tmp));
  const double t =
      mod_two_pi(alpha - std::atan2(ca - cb, d - sa + sb) + mod_two_pi(p / 2));
  return {true, t, p, mod_two_pi(alpha - beta - t + mod_two_pi(p))};
}

inline WordParams word_lrl(double alpha, double beta, double d) {
  const double sa = std::sin(alpha), sb = std::sin(beta);
  const double ca = std::cos(alpha), cb = std::cos(beta);
  const double c_ab = std::cos(alpha - beta);
  const double tmp = (6.0 - d * d + 2.0 * c_ab + 2.0 * d * (sb - sa)) / 8.0;
  if (std::abs(tmp) > 1.0) return {};
  const double p = mod_two_pi(kTwoPi - std::acos(tmp));
  const double t =
      mod_two_pi(-alpha - std::atan2(ca - cb, d + sa - sb) + p / 2);
  return {true, t, p,
          mod_two_pi(mod_two_pi(beta) - alpha - t + mod_two_pi(p))};
}

}  // namespace detail

/// All feasible words of the six types connecting `start` to `goal` under
/// turning radius r. Arc pieces use radius r exactly; every candidate's
/// endpoint matches the goal to machine precision. The middle arc of a CCC
/// word always sweeps more than pi (the admissible branch).
inline std::vector<DubinsCandidate> enumerate_words(const Configuration& start,
                                                    const Configuration& goal,
                                                    double r) {
  if (r <= 0.0) throw std::invalid_argument("turning radius must be > 0");
  const double dx = goal.x - start.x;
  const double dy = goal.y - start.y;
  const double dist = std::hypot(dx, dy);
  const double d = dist / r;

  std::vector<DubinsCandidate> out;
  if (dist <= 1e-12 &&
      std::abs(normalize_angle(goal.theta - start.theta)) <= 1e-12) {
    out.push_back({{SegmentKind::CcwArc, SegmentKind::Straight,
                    SegmentKind::CcwArc},
                   {0.0, 0.0, 0.0},
                   0.0});
    return out;
  }

  // Direction angles relative to the start->goal ray, standard convention.
  const double ray = std::atan2(dy, dx);
  const double alpha = mod_two_pi(kPi / 2 - start.theta - ray);
  const double beta = mod_two_pi(kPi / 2 - goal.theta - ray);

  struct Entry {
    detail::WordParams (*fn)(double, double, double);
    std::array<SegmentKind, 3> kinds;
    bool ccc;
  };
  static const Entry kTable[] = {
      {detail::word_lrl,
       {SegmentKind::CcwArc, SegmentKind::CwArc, SegmentKind::CcwArc},
       true},
      {detail::word_rlr,
       {SegmentKind::CwArc, SegmentKind::CcwArc, SegmentKind::CwArc},
       true},
      {detail::word_lsl,
       {SegmentKind::CcwArc, SegmentKind::Straight, SegmentKind::CcwArc},
       false},
      {detail::word_rsr,
       {SegmentKind::CwArc, SegmentKind::Straight, SegmentKind::CwArc},
       false},
      {detail::word_rsl,
       {SegmentKind::CwArc, SegmentKind::Straight, SegmentKind::CcwArc},
       false},
      {detail::word_lsr,
       {SegmentKind::CcwArc, SegmentKind::Straight, SegmentKind::CwArc},
       false},
  };

  for (const Entry& e : kTable) {
    const detail::WordParams w = e.fn(alpha, beta, d);
    if (!w.ok) continue;
    if (e.ccc && w.p <= kPi) continue;  // spurious stationary branch
    DubinsCandidate c;
    c.kinds = e.kinds;
    c.lengths = {r * w.t, r * w.p, r * w.q};
    c.total_length = c.lengths[0] + c.lengths[1] + c.lengths[2];
    out.push_back(c);
  }
  return out;
}

/// Endpoint of a candidate started at `start`, traversed at unit speed.
inline Configuration candidate_endpoint(const Configuration& start,
                                        const DubinsCandidate& c, double r) {
  Configuration cur = start;
  for (int i = 0; i < 3; ++i)
    cur = propagate(cur, c.kinds[i], c.lengths[i], 1.0, 1.0 / r);
  return cur;
}

/// The minimum-length candidate; ties resolved by word spelling.
inline DubinsCandidate shortest_dubins(const Configuration& start,
                                       const Configuration& goal, double r) {
  const std::vector<DubinsCandidate> cands = enumerate_words(start, goal, r);
  if (cands.empty()) throw std::runtime_error("no feasible Dubins word");
  const DubinsCandidate* best = &cands.front();
  for (const DubinsCandidate& c : cands)
    if (candidate_precedes(c, *best)) best = &c;
  return *best;
}

}  // namespace rdubins

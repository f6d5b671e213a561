#pragma once

// Boundary-crossing laws for minimum-time paths between regions with
// different speeds and turning radii. When the path crosses with an arc
// flanked by straight pieces on both sides, the incidence/emergence angles
// and arc sweeps obey a refraction law generalizing Snell's law:
//
//   v_p / v_p' = sin(theta_p) / sin(theta_p')
//   r_p / r_p' = (v_p / v_p') * (1 - cos(d_theta_p')) / (1 - cos(d_theta_p))
//
// All angles live in the boundary frame (normal = +y', tangent = x'), so a
// heading is also its angle to the boundary normal. This header evaluates
// the law residuals, the zero-radius Snell limit, the equal-rate special
// case, and classifies crossings into the admissible kinds versus the
// provably nonoptimal patterns.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdubins/geometry.hpp"

namespace rdubins {

struct DegenerateCrossing : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct TotalInternalReflection : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotStarCase : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MalformedSubpath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The nine admissible ways a path can traverse a boundary. A single C+/C-
/// names an arc spanning the edge (same turn direction on both sides, radius
/// switching at the edge); X/Y names a control switch exactly at the edge.
enum class CrossingKind : int {
  LPerp = 0,     // straight through (orthogonal when speeds differ)
  CPlus,         // spanning clockwise arc
  CMinus,        // spanning counter-clockwise arc
  CPlusL,        // C+ up to the edge, straight after
  CMinusL,
  LCPlus,        // straight up to the edge, C+ after
  LCMinus,
  CPlusCMinus,   // turn direction flips at the edge
  CMinusCPlus,
};

inline const char* to_string(CrossingKind k) {
  switch (k) {
    case CrossingKind::LPerp: return "L";
    case CrossingKind::CPlus: return "C+";
    case CrossingKind::CMinus: return "C-";
    case CrossingKind::CPlusL: return "C+/L";
    case CrossingKind::CMinusL: return "C-/L";
    case CrossingKind::LCPlus: return "L/C+";
    case CrossingKind::LCMinus: return "L/C-";
    case CrossingKind::CPlusCMinus: return "C+/C-";
    case CrossingKind::CMinusCPlus: return "C-/C+";
  }
  return "?";
}

/// Geometric record of one boundary traversal, in the crossing's boundary
/// frame. theta_p / theta_pp are the headings of the straight pieces flanking
/// the boundary arc on the incident/emergent side when those exist;
/// d_theta_p = theta_star - theta_p and d_theta_pp = theta_pp - theta_star
/// are the signed arc sweeps on each side of the edge.
struct CrossingRecord {
  BoundaryFrame frame;
  double theta_star = 0.0;
  bool has_incident_l = false;
  bool has_emergent_l = false;
  double theta_p = 0.0;
  double theta_pp = 0.0;
  double d_theta_p = 0.0;
  double d_theta_pp = 0.0;
  int region_p = -1;
  int region_pp = -1;
  CrossingKind kind = CrossingKind::LPerp;
};

struct RefractionResiduals {
  double rho_v = 0.0;
  double rho_r = 0.0;
};

/// Dimensionless residuals of the two refraction laws; both vanish iff the
/// laws hold exactly. Requires straight pieces on both sides of the boundary
/// arc; throws DegenerateCrossing when a law denominator vanishes (the law
/// does not constrain that crossing).
inline RefractionResiduals refraction_residuals(const CrossingRecord& rec,
                                                const Region& p,
                                                const Region& pp) {
  if (!rec.has_incident_l || !rec.has_emergent_l)
    throw DegenerateCrossing(
        "refraction law needs straight pieces on both sides of the crossing");
  const double sin_p = std::sin(rec.theta_p);
  const double sin_pp = std::sin(rec.theta_pp);
  if (std::abs(sin_pp) < 1e-12)
    throw DegenerateCrossing("sin(theta_p') vanishes");
  const double one_m_cos_p = 1.0 - std::cos(rec.d_theta_p);
  const double one_m_cos_pp = 1.0 - std::cos(rec.d_theta_pp);
  if (one_m_cos_p < 1e-12)
    throw DegenerateCrossing("incident arc sweep vanishes");

  RefractionResiduals res;
  res.rho_v = (p.v * sin_pp - pp.v * sin_p) / std::max(p.v, pp.v);
  const double a = p.r * pp.v * one_m_cos_p;
  const double b = pp.r * p.v * one_m_cos_pp;
  res.rho_r = (a - b) / std::max(std::abs(a), std::abs(b));
  return res;
}

/// Exit angle of a straight crossing in the zero-radius (Snell) limit:
/// theta_p' = asin((v_p'/v_p) sin theta_p), carrying the sign of theta_p.
/// Throws TotalInternalReflection when no refracted ray exists.
inline double snell_exit_angle(double theta_p, double v_p, double v_pp) {
  const double s = (v_pp / v_p) * std::sin(theta_p);
  if (std::abs(s) > 1.0 + 1e-12)
    throw TotalInternalReflection("no refracted ray: |sin theta_p'| = " +
                                  std::to_string(std::abs(s)));
  return std::asin(std::clamp(s, -1.0, 1.0));
}

struct StarCaseResult {
  double residual = 0.0;
  bool pass = false;
};

/// Equal-angular-rate special case: when u_max matches across the boundary
/// the radius law reduces to equal arc sweeps on both sides.
inline StarCaseResult check_star_case(const CrossingRecord& rec,
                                      const Region& p, const Region& pp,
                                      double tol = 1e-6) {
  const double scale = std::max(p.u_max, pp.u_max);
  if (std::abs(p.u_max - pp.u_max) > 1e-9 * scale)
    throw NotStarCase("angular-rate bounds differ: " +
                      std::to_string(p.u_max) + " vs " +
                      std::to_string(pp.u_max));
  StarCaseResult out;
  out.residual = std::abs(rec.d_theta_p - rec.d_theta_pp);
  out.pass = out.residual <= tol;
  return out;
}

/// One piece of a subpath handed to the crossing classifier.
struct SubpathPiece {
  SegmentKind kind = SegmentKind::Straight;
  double duration = 0.0;
  int region = -1;
};

struct CrossingClass {
  bool admissible = false;
  CrossingKind kind = CrossingKind::LPerp;
  std::string reason;  // matched nonoptimal pattern when inadmissible
};

/// Classifies a contiguous subpath spanning exactly one boundary crossing
/// into one of the nine admissible kinds, or flags the nonoptimal patterns:
/// a non-orthogonal straight crossing between regions of different speed,
/// L_p C_p L_p', L_p C_p' L_p', and L_p C_p C_p' L_p' (zero-length outer
/// pieces included). Throws MalformedSubpath unless the pieces visit region
/// p then region p' with exactly one transition.
inline CrossingClass classify_crossing(std::span<const SubpathPiece> pieces,
                                       double theta_star, const Region& p,
                                       const Region& pp,
                                       double perp_tol = 1e-6) {
  if (pieces.empty()) throw MalformedSubpath("empty subpath");
  std::size_t transitions = 0;
  for (std::size_t i = 0; i + 1 < pieces.size(); ++i)
    if (pieces[i].region != pieces[i + 1].region) ++transitions;
  if (transitions != 1)
    throw MalformedSubpath("subpath must cross the boundary exactly once");
  if (pieces.front().region != p.id || pieces.back().region != pp.id)
    throw MalformedSubpath("subpath regions do not match the crossing pair");

  // Zero-length pieces are artifacts of clamped words, not geometry.
  std::vector<SubpathPiece> live;
  for (const SubpathPiece& sp : pieces)
    if (sp.duration > 1e-12) live.push_back(sp);
  std::size_t split = 0;
  while (split < live.size() && live[split].region == p.id) ++split;
  if (split == 0 || split == live.size())
    throw MalformedSubpath("no positive-length piece on one side");

  const SubpathPiece& a = live[split - 1];
  const SubpathPiece& b = live[split];
  const SubpathPiece* before = split >= 2 ? &live[split - 2] : nullptr;
  const SubpathPiece* after = split + 1 < live.size() ? &live[split + 1] : nullptr;
  const bool l_before = before && before->kind == SegmentKind::Straight;
  const bool l_after = after && after->kind == SegmentKind::Straight;
  const bool speeds_differ = std::abs(p.v - pp.v) > 1e-12 * std::max(p.v, pp.v);

  CrossingClass out;
  if (a.kind == SegmentKind::Straight && b.kind == SegmentKind::Straight) {
    const double m = std::abs(normalize_angle(theta_star));
    const double off_normal = std::min(m, kPi - m);
    if (speeds_differ && off_normal > perp_tol) {
      out.reason = "non-orthogonal straight crossing with unequal speeds";
      return out;
    }
    out.admissible = true;
    out.kind = CrossingKind::LPerp;
    return out;
  }
  if (a.kind != SegmentKind::Straight && b.kind != SegmentKind::Straight) {
    if (a.kind == b.kind) {
      out.admissible = true;
      out.kind = a.kind == SegmentKind::CwArc ? CrossingKind::CPlus
                                              : CrossingKind::CMinus;
      return out;
    }
    if (l_before && l_after) {
      out.reason = "L_p C_p C_p' L_p' pattern";
      return out;
    }
    out.admissible = true;
    out.kind = a.kind == SegmentKind::CwArc ? CrossingKind::CPlusCMinus
                                            : CrossingKind::CMinusCPlus;
    return out;
  }
  if (b.kind == SegmentKind::Straight) {  // arc ends exactly at the edge
    if (l_before) {
      out.reason = "L_p C_p L_p' pattern";
      return out;
    }
    out.admissible = true;
    out.kind = a.kind == SegmentKind::CwArc ? CrossingKind::CPlusL
                                            : CrossingKind::CMinusL;
    return out;
  }
  // straight up to the edge, arc after
  if (l_after) {
    out.reason = "L_p C_p' L_p' pattern";
    return out;
  }
  out.admissible = true;
  out.kind = b.kind == SegmentKind::CwArc ? CrossingKind::LCPlus
                                          : CrossingKind::LCMinus;
  return out;
}

}  // namespace rdubins

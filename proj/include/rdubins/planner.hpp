#pragma once

// Multi-region minimum-time planning. A candidate route is a sequence of
// adjacent regions; each boundary crossing is parameterized by the arclength
// s* of the crossing point along the shared edge and the crossing heading
// theta* measured from the boundary normal (into the next region). Between
// crossings the subproblem is an exact single-region Dubins solve, so a
// route with m crossings is a 2m-parameter continuous optimization:
// deterministic multi-start grids refined by coordinate descent, a Newton
// polish on the time gradient, and a final Newton solve of the refraction
// residuals when every crossing is of the L C L type. Pieces that span a
// boundary are split exactly at the edge, taking each region's curvature on
// its own side.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rdubins/dubins.hpp"
#include "rdubins/geometry.hpp"
#include "rdubins/oracle.hpp"
#include "rdubins/path.hpp"
#include "rdubins/refraction.hpp"

namespace rdubins {

struct SequenceBudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlannerOptions {
  int grid_s = 16;              // multi-start grid, single-crossing routes
  int grid_theta = 16;
  int joint_grid = 6;           // per-dimension seeds for joint searches
  int joint_refine_top = 24;    // seeds fully refined for joint searches
  double improve_tol = 1e-9;    // coordinate-descent stopping improvement
  double containment_tol = 1e-7;
  double penalty_weight = 1e5;  // per length unit of containment violation
  int sequence_cap = 1000;
  unsigned threads = 0;         // 0 = hardware concurrency
};

namespace detail {

// Frozen geometry of one route: the shared edge, parameterization origin,
// and frame angle for every crossing.
struct RouteGeometry {
  std::vector<int> seq;  // region ids, length m + 1
  std::vector<const Region*> regions;
  std::vector<Vec2> edge_origin;    // per crossing
  std::vector<Vec2> edge_tangent;
  std::vector<double> edge_length;
  std::vector<double> margin;
  std::vector<double> phi;  // boundary frame angle, normal into next region

  std::size_t crossings() const { return edge_origin.size(); }
};

inline std::optional<RouteGeometry> route_geometry(const Scenario& sc,
                                                   const std::vector<int>& seq) {
  RouteGeometry g;
  g.seq = seq;
  for (int id : seq) g.regions.push_back(&sc.map.region(id));
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const Adjacency* ad = sc.map.shared_edge(seq[i], seq[i + 1]);
    if (!ad) return std::nullopt;
    const double len = ad->length();
    g.edge_origin.push_back(ad->p0);
    g.edge_tangent.push_back(ad->tangent());
    g.edge_length.push_back(len);
    g.margin.push_back(1e-3 * len);
    const Vec2 mid = ad->p0 + 0.5 * len * ad->tangent();
    const BoundaryFrame f =
        frame_on_edge(mid, ad->p0, ad->p1, g.regions[i + 1]->polygon);
    g.phi.push_back(f.phi);
  }
  return g;
}

inline BoundaryFrame crossing_frame(const RouteGeometry& g, std::size_t i,
                                    double s) {
  return {g.edge_origin[i] + s * g.edge_tangent[i], g.phi[i]};
}

// Time of one single-region leg plus its containment violation, without
// heap allocation. Returns false if no word connects the poses.
inline bool leg_cost(const Configuration& a, const Configuration& b,
                     const Region& rg, double* time, double* violation,
                     DubinsCandidate* word) {
  const std::vector<DubinsCandidate> cands = enumerate_words(a, b, rg.r);
  if (cands.empty()) return false;
  const DubinsCandidate* best = &cands.front();
  for (const DubinsCandidate& c : cands)
    if (candidate_precedes(c, *best)) best = &c;
  *time = best->total_length / rg.v;
  if (word) *word = *best;
  double viol = 0.0;
  Configuration cur = a;
  for (int k = 0; k < 3; ++k) {
    const Segment s{best->kinds[k], best->lengths[k] / rg.v, rg.id};
    viol = std::max(viol, -segment_min_inset(cur, s, rg));
    cur = advance(cur, s, rg);
  }
  *violation = viol;
  return true;
}

struct RouteEval {
  double time = std::numeric_limits<double>::infinity();
  double violation = std::numeric_limits<double>::infinity();
  double objective = std::numeric_limits<double>::infinity();
  bool ok = false;
};

inline RouteEval evaluate_route(const Scenario& sc, const RouteGeometry& g,
                                const std::vector<double>& params,
                                double penalty_weight,
                                PathSolution* out = nullptr) {
  RouteEval ev;
  const std::size_t m = g.crossings();
  Configuration prev = sc.start;
  double time = 0.0, violation = 0.0;
  PathSolution path;
  path.start = sc.start;
  for (std::size_t leg = 0; leg <= m; ++leg) {
    Configuration next;
    if (leg < m) {
      const BoundaryFrame f = crossing_frame(g, leg, params[2 * leg]);
      next = from_boundary_frame({0.0, 0.0, params[2 * leg + 1]}, f);
    } else {
      next = sc.goal;
    }
    double t = 0.0, v = 0.0;
    DubinsCandidate word;
    if (!leg_cost(prev, next, *g.regions[leg], &t, &v, out ? &word : nullptr))
      return ev;
    time += t;
    violation = std::max(violation, v);
    if (out) {
      Phase ph;
      ph.region = g.regions[leg]->id;
      for (int k = 0; k < 3; ++k)
        ph.segments.push_back({word.kinds[k],
                               word.lengths[k] / g.regions[leg]->v,
                               g.regions[leg]->id});
      path.phases.push_back(ph);
    }
    prev = next;
  }
  ev.ok = true;
  ev.time = time;
  ev.violation = violation;
  ev.objective = time + penalty_weight * violation;
  if (out) *out = std::move(path);
  return ev;
}

inline void clamp_params(const RouteGeometry& g, std::vector<double>* params) {
  constexpr double kThetaCap = kPi / 2 - 1e-4;
  for (std::size_t i = 0; i < g.crossings(); ++i) {
    double& s = (*params)[2 * i];
    double& th = (*params)[2 * i + 1];
    s = std::clamp(s, g.margin[i], g.edge_length[i] - g.margin[i]);
    th = std::clamp(th, -kThetaCap, kThetaCap);
  }
}

// Compass coordinate descent with shrinking steps; runs until a sweep
// improves the objective by less than `improve_tol` at the smallest step.
inline RouteEval coordinate_descent(const Scenario& sc, const RouteGeometry& g,
                                    std::vector<double>* params,
                                    const PlannerOptions& opt) {
  const std::size_t n = params->size();
  std::vector<double> step(n);
  std::vector<double> floor_step(n);
  for (std::size_t i = 0; i < g.crossings(); ++i) {
    step[2 * i] = g.edge_length[i] / 16.0;
    step[2 * i + 1] = kPi / 16.0;
    floor_step[2 * i] = 1e-9 * g.edge_length[i];
    floor_step[2 * i + 1] = 1e-10;
  }
  clamp_params(g, params);
  RouteEval cur = evaluate_route(sc, g, *params, opt.penalty_weight);
  int stall = 0;
  for (int iter = 0; iter < 4000; ++iter) {
    double sweep_gain = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (const double dir : {1.0, -1.0}) {
        std::vector<double> trial = *params;
        trial[i] += dir * step[i];
        clamp_params(g, &trial);
        const RouteEval ev = evaluate_route(sc, g, trial, opt.penalty_weight);
        if (ev.ok && ev.objective < cur.objective) {
          sweep_gain += cur.objective - ev.objective;
          cur = ev;
          *params = trial;
          break;
        }
      }
    }
    if (sweep_gain <= 0.0) {
      bool at_floor = true;
      for (std::size_t i = 0; i < n; ++i) {
        step[i] = std::max(step[i] * 0.5, floor_step[i]);
        if (step[i] > floor_step[i]) at_floor = false;
      }
      if (at_floor && ++stall >= 2) break;
    } else if (sweep_gain < opt.improve_tol) {
      bool at_floor = true;
      for (std::size_t i = 0; i < n; ++i)
        if (step[i] > floor_step[i]) at_floor = false;
      if (at_floor) break;
      for (std::size_t i = 0; i < n; ++i)
        step[i] = std::max(step[i] * 0.5, floor_step[i]);
    }
  }
  return cur;
}

// Newton polish on the time gradient; keeps the best feasible iterate.
inline RouteEval newton_polish(const Scenario& sc, const RouteGeometry& g,
                               std::vector<double>* params,
                               const PlannerOptions& opt) {
  const std::size_t n = params->size();
  std::vector<double> h(n);
  for (std::size_t i = 0; i < g.crossings(); ++i) {
    h[2 * i] = 1e-6 * g.edge_length[i];
    h[2 * i + 1] = 1e-6;
  }
  auto value = [&](const std::vector<double>& x) {
    return evaluate_route(sc, g, x, opt.penalty_weight);
  };
  RouteEval cur = value(*params);
  for (int it = 0; it < 12; ++it) {
    std::vector<double> grad(n);
    std::vector<std::vector<double>> hess(n, std::vector<double>(n, 0.0));
    const double f0 = cur.objective;
    std::vector<double> fp(n), fm(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> xp = *params, xm = *params;
      xp[i] += h[i];
      xm[i] -= h[i];
      fp[i] = value(xp).objective;
      fm[i] = value(xm).objective;
      grad[i] = (fp[i] - fm[i]) / (2.0 * h[i]);
      hess[i][i] = (fp[i] - 2.0 * f0 + fm[i]) / (h[i] * h[i]);
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        std::vector<double> xpp = *params;
        xpp[i] += h[i];
        xpp[j] += h[j];
        const double fpp = value(xpp).objective;
        const double mixed =
            (fpp - fp[i] - fp[j] + f0) / (h[i] * h[j]);
        hess[i][j] = hess[j][i] = mixed;
      }
    // Solve hess * delta = -grad by Gaussian elimination with pivoting.
    std::vector<std::vector<double>> a = hess;
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -grad[i];
    bool singular = false;
    for (std::size_t col = 0; col < n && !singular; ++col) {
      std::size_t piv = col;
      for (std::size_t r = col + 1; r < n; ++r)
        if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
      if (std::abs(a[piv][col]) < 1e-14) {
        singular = true;
        break;
      }
      std::swap(a[col], a[piv]);
      std::swap(rhs[col], rhs[piv]);
      for (std::size_t r = col + 1; r < n; ++r) {
        const double f = a[r][col] / a[col][col];
        for (std::size_t cc = col; cc < n; ++cc) a[r][cc] -= f * a[col][cc];
        rhs[r] -= f * rhs[col];
      }
    }
    if (singular) break;
    std::vector<double> delta(n);
    for (std::size_t i = n; i-- > 0;) {
      double s = rhs[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * delta[j];
      delta[i] = s / a[i][i];
    }
    bool accepted = false;
    double scale = 1.0;
    for (int ls = 0; ls < 6; ++ls, scale *= 0.5) {
      std::vector<double> trial = *params;
      for (std::size_t i = 0; i < n; ++i) trial[i] += scale * delta[i];
      clamp_params(g, &trial);
      const RouteEval ev = value(trial);
      if (ev.ok && ev.objective <= cur.objective + 1e-13 * (1.0 + f0)) {
        const bool converged =
            std::abs(ev.objective - cur.objective) < 1e-14 * (1.0 + f0);
        *params = trial;
        cur = ev;
        accepted = true;
        if (converged) return cur;
        break;
      }
    }
    if (!accepted) break;
  }
  return cur;
}

// Newton solve of the stacked refraction residuals when every crossing is
// of the L C L type. Accepts the result only if it stays feasible and does
// not cost measurable time.
inline bool refraction_polish(const Scenario& sc, const RouteGeometry& g,
                              std::vector<double>* params,
                              const PlannerOptions& opt) {
  const std::size_t m = g.crossings();
  if (m == 0) return false;
  auto residuals = [&](const std::vector<double>& x,
                       std::vector<double>* r) -> bool {
    PathSolution path;
    const RouteEval ev = evaluate_route(sc, g, x, opt.penalty_weight, &path);
    if (!ev.ok || ev.violation > 10.0 * opt.containment_tol) return false;
    try {
      finalize_path(path, sc.map);
    } catch (const std::exception&) {
      return false;
    }
    if (path.crossings.size() != m) return false;
    r->clear();
    for (const CrossingRecord& rec : path.crossings) {
      if (rec.kind != CrossingKind::CPlus && rec.kind != CrossingKind::CMinus)
        return false;
      if (!rec.has_incident_l || !rec.has_emergent_l) return false;
      try {
        const RefractionResiduals rr = refraction_residuals(
            rec, sc.map.region(rec.region_p), sc.map.region(rec.region_pp));
        r->push_back(rr.rho_v);
        r->push_back(rr.rho_r);
      } catch (const DegenerateCrossing&) {
        return false;
      }
    }
    return true;
  };

  std::vector<double> x = *params;
  std::vector<double> r0;
  if (!residuals(x, &r0)) return false;
  const double t_before = evaluate_route(sc, g, x, opt.penalty_weight).time;
  auto norm2 = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
  };
  const std::size_t n = 2 * m;
  for (int it = 0; it < 20 && norm2(r0) > 1e-12; ++it) {
    std::vector<std::vector<double>> jac(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double h = (i % 2 == 0) ? 1e-7 * g.edge_length[i / 2] : 1e-7;
      std::vector<double> xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      std::vector<double> rp, rm;
      if (!residuals(xp, &rp) || !residuals(xm, &rm)) return false;
      for (std::size_t k = 0; k < n; ++k)
        jac[k][i] = (rp[k] - rm[k]) / (2.0 * h);
    }
    // Solve jac * delta = -r0.
    std::vector<std::vector<double>> a = jac;
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i) rhs[i] = -r0[i];
    for (std::size_t col = 0; col < n; ++col) {
      std::size_t piv = col;
      for (std::size_t rr = col + 1; rr < n; ++rr)
        if (std::abs(a[rr][col]) > std::abs(a[piv][col])) piv = rr;
      if (std::abs(a[piv][col]) < 1e-14) return false;
      std::swap(a[col], a[piv]);
      std::swap(rhs[col], rhs[piv]);
      for (std::size_t rr = col + 1; rr < n; ++rr) {
        const double f = a[rr][col] / a[col][col];
        for (std::size_t cc = col; cc < n; ++cc) a[rr][cc] -= f * a[col][cc];
        rhs[rr] -= f * rhs[col];
      }
    }
    std::vector<double> delta(n);
    for (std::size_t i = n; i-- > 0;) {
      double s = rhs[i];
      for (std::size_t j = i + 1; j < n; ++j) s -= a[i][j] * delta[j];
      delta[i] = s / a[i][i];
    }
    bool stepped = false;
    double scale = 1.0;
    for (int ls = 0; ls < 8; ++ls, scale *= 0.5) {
      std::vector<double> trial = x;
      for (std::size_t i = 0; i < n; ++i) trial[i] += scale * delta[i];
      clamp_params(g, &trial);
      std::vector<double> rt;
      if (!residuals(trial, &rt)) continue;
      if (norm2(rt) < norm2(r0)) {
        x = trial;
        r0 = rt;
        stepped = true;
        break;
      }
    }
    if (!stepped) break;
  }
  const RouteEval after = evaluate_route(sc, g, x, opt.penalty_weight);
  if (!after.ok || after.violation > opt.containment_tol) return false;
  if (after.time > t_before + 1e-9 * (1.0 + t_before)) return false;
  *params = x;
  return true;
}

struct RouteCandidate {
  bool ok = false;
  double time = std::numeric_limits<double>::infinity();
  std::vector<double> params;
  PathSolution path;
  std::vector<int> spelling;  // kind codes for deterministic tie-breaks
};

inline std::vector<int> path_spelling(const PathSolution& p) {
  std::vector<int> s;
  for (const Phase& ph : p.phases)
    for (const Segment& sg : ph.segments)
      if (sg.duration > 1e-12) s.push_back(static_cast<int>(sg.kind));
  return s;
}

inline bool candidate_better(const RouteCandidate& a, const RouteCandidate& b) {
  if (!b.ok) return a.ok;
  if (!a.ok) return false;
  if (a.time < b.time - 1e-9) return true;
  if (b.time < a.time - 1e-9) return false;
  if (a.spelling != b.spelling) return a.spelling < b.spelling;
  return a.path.route_signature() < b.path.route_signature();
}

// Optimizes one region sequence; returns the best admissible candidate.
inline RouteCandidate plan_route(const Scenario& sc,
                                 const std::vector<int>& seq,
                                 const PlannerOptions& opt) {
  RouteCandidate none;
  const std::optional<RouteGeometry> geom = route_geometry(sc, seq);
  if (!geom) return none;
  const RouteGeometry& g = *geom;
  const std::size_t m = g.crossings();

  // Degenerate: no crossing, single-region Dubins.
  if (m == 0) {
    PathSolution path;
    const RouteEval ev =
        evaluate_route(sc, g, {}, opt.penalty_weight, &path);
    if (!ev.ok || ev.violation > opt.containment_tol) return none;
    finalize_path(path, sc.map);
    if (!validate_path(path, sc.map, opt.containment_tol).empty()) return none;
    RouteCandidate out;
    out.ok = true;
    out.time = ev.time;
    out.path = std::move(path);
    out.spelling = path_spelling(out.path);
    return out;
  }

  // Multi-start seeds.
  std::vector<std::vector<double>> seeds;
  if (m == 1) {
    for (int i = 0; i < opt.grid_s; ++i) {
      const double s = g.edge_length[0] * (i + 0.5) / opt.grid_s;
      for (int j = 0; j < opt.grid_theta; ++j) {
        const double th = -kPi / 2 + kPi * (j + 0.5) / opt.grid_theta;
        seeds.push_back({s, th});
      }
      seeds.push_back({s, 0.0});  // orthogonal-crossing family
    }
  } else {
    const int gs = opt.joint_grid;
    std::vector<std::vector<double>> axes;  // per-parameter seed values
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<double> sv, tv;
      for (int k = 0; k < gs; ++k) {
        sv.push_back(g.edge_length[i] * (k + 0.5) / gs);
        tv.push_back(-kPi / 2 + kPi * (k + 0.5) / gs);
      }
      tv.push_back(0.0);
      axes.push_back(sv);
      axes.push_back(tv);
    }
    std::vector<double> cur(2 * m, 0.0);
    std::size_t total = 1;
    for (const std::vector<double>& ax : axes) total *= ax.size();
    if (total > 200000) total = 200000;
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t rem = flat;
      for (std::size_t i = 0; i < axes.size(); ++i) {
        cur[i] = axes[i][rem % axes[i].size()];
        rem /= axes[i].size();
      }
      seeds.push_back(cur);
    }
  }

  struct Refined {
    RouteEval ev;
    std::vector<double> params;
  };
  const unsigned n_threads = std::max(
      1u, opt.threads ? opt.threads : std::thread::hardware_concurrency());

  std::vector<std::size_t> to_refine;
  if (m == 1) {
    to_refine.resize(seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) to_refine[i] = i;
  } else {
    // Screen the joint grid by objective, keep the most promising seeds.
    std::vector<std::pair<double, std::size_t>> scored(seeds.size());
    auto score_worker = [&](unsigned w) {
      for (std::size_t i = w; i < seeds.size(); i += n_threads) {
        std::vector<double> p = seeds[i];
        clamp_params(g, &p);
        const RouteEval ev = evaluate_route(sc, g, p, opt.penalty_weight);
        scored[i] = {ev.ok ? ev.objective
                           : std::numeric_limits<double>::infinity(),
                     i};
      }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n_threads; ++w) pool.emplace_back(score_worker, w);
    score_worker(0);
    for (std::thread& th : pool) th.join();
    std::sort(scored.begin(), scored.end());
    const std::size_t keep =
        std::min<std::size_t>(scored.size(), opt.joint_refine_top);
    for (std::size_t i = 0; i < keep; ++i) to_refine.push_back(scored[i].second);
  }

  std::vector<Refined> refined(to_refine.size());
  auto refine_worker = [&](unsigned w) {
    for (std::size_t i = w; i < to_refine.size(); i += n_threads) {
      std::vector<double> p = seeds[to_refine[i]];
      clamp_params(g, &p);
      RouteEval ev = coordinate_descent(sc, g, &p, opt);
      refined[i] = {ev, p};
    }
  };
  std::vector<std::thread> pool2;
  for (unsigned w = 1; w < n_threads; ++w) pool2.emplace_back(refine_worker, w);
  refine_worker(0);
  for (std::thread& th : pool2) th.join();

  // Deterministic pick of the best refined start, then polish.
  std::sort(refined.begin(), refined.end(),
            [](const Refined& a, const Refined& b) {
              if (a.ev.objective != b.ev.objective)
                return a.ev.objective < b.ev.objective;
              return a.params < b.params;
            });

  RouteCandidate best;
  for (const Refined& cand : refined) {
    if (!cand.ev.ok) continue;
    if (best.ok && cand.ev.objective > best.time + 0.05 * (1.0 + best.time))
      break;  // remaining starts are far worse
    std::vector<double> p = cand.params;
    newton_polish(sc, g, &p, opt);
    // Snap a near-orthogonal straight crossing to exactly orthogonal.
    for (std::size_t i = 0; i < m; ++i)
      if (std::abs(p[2 * i + 1]) < 1e-7) {
        std::vector<double> trial = p;
        trial[2 * i + 1] = 0.0;
        const RouteEval before = evaluate_route(sc, g, p, opt.penalty_weight);
        const RouteEval after =
            evaluate_route(sc, g, trial, opt.penalty_weight);
        if (after.ok &&
            after.objective <= before.objective + 1e-9 * (1.0 + before.time))
          p = trial;
      }
    refraction_polish(sc, g, &p, opt);

    PathSolution path;
    const RouteEval ev = evaluate_route(sc, g, p, opt.penalty_weight, &path);
    if (!ev.ok || ev.violation > opt.containment_tol) continue;
    try {
      finalize_path(path, sc.map);
    } catch (const std::exception&) {
      continue;
    }
    if (!validate_path(path, sc.map, opt.containment_tol).empty()) continue;
    RouteCandidate out;
    out.ok = true;
    out.time = ev.time;
    out.params = p;
    out.path = std::move(path);
    out.spelling = path_spelling(out.path);
    if (candidate_better(out, best)) best = std::move(out);
  }
  return best;
}

inline void enumerate_routes(const Scenario& sc, int max_crossings,
                             int sequence_cap,
                             std::vector<std::vector<int>>* out) {
  std::vector<int> cur{sc.start_region};
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(out->size()) > sequence_cap)
      throw SequenceBudgetExceeded(
          "route enumeration exceeded the sequence cap of " +
          std::to_string(sequence_cap));
    if (cur.back() == sc.goal_region) out->push_back(cur);
    if (static_cast<int>(cur.size()) > max_crossings) return;
    for (int nb : sc.map.neighbors(cur.back())) {
      if (cur.size() >= 2 && nb == cur[cur.size() - 2]) continue;
      cur.push_back(nb);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  std::sort(out->begin(), out->end());
}

}  // namespace detail

/// Minimum-time path across exactly one shared edge between two regions.
inline PathSolution plan_two_region(const Scenario& sc,
                                    const PlannerOptions& opt = {}) {
  validate_scenario(sc);
  if (sc.map.regions.size() != 2)
    throw std::invalid_argument("plan_two_region needs exactly two regions");
  if (sc.start_region == sc.goal_region)
    throw std::invalid_argument(
        "plan_two_region needs start and goal in different regions");
  const detail::RouteCandidate best =
      detail::plan_route(sc, {sc.start_region, sc.goal_region}, opt);
  if (!best.ok)
    throw NoFeasiblePath("no admissible single-crossing path found");
  return best.path;
}

/// Minimum-time path over all region sequences with at most `max_crossings`
/// boundary crossings (adjacency-graph walks without immediate backtracking).
inline PathSolution plan_multi_region(const Scenario& sc, int max_crossings,
                                      const PlannerOptions& opt = {}) {
  validate_scenario(sc);
  std::vector<std::vector<int>> routes;
  detail::enumerate_routes(sc, max_crossings, opt.sequence_cap, &routes);
  if (routes.empty())
    throw NoFeasiblePath("goal region unreachable within " +
                         std::to_string(max_crossings) + " crossings");
  detail::RouteCandidate best;
  for (const std::vector<int>& seq : routes) {
    detail::RouteCandidate cand = detail::plan_route(sc, seq, opt);
    if (detail::candidate_better(cand, best)) best = std::move(cand);
  }
  if (!best.ok) throw NoFeasiblePath("every candidate route is infeasible");
  return best.path;
}

}  // namespace rdubins

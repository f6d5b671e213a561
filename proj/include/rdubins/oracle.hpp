#pragma once

// Independent brute-force minimum-time solver. Minimum-time controls are
// piecewise constant with values in {-u_max(q), 0, +u_max(q)}, so the
// search space is: a sign sequence (adjacent signs distinct) plus one
// duration per piece. simulate() integrates a schedule exactly with event
// detection at region edges; brute_force_min_time() enumerates sign
// sequences and minimizes durations by penalized coordinate descent with
// golden-section line searches. Everything here is deterministic.

#include <array>
#include <cmath>
#include <cstddef>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rdubins/geometry.hpp"
#include "rdubins/path.hpp"

namespace rdubins {

struct LeftDomain : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoFeasibleFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Planning problem: a region map plus interior start and goal poses.
struct Scenario {
  RegionMap map;
  Configuration start;
  int start_region = -1;
  Configuration goal;
  int goal_region = -1;
};

inline void validate_scenario(const Scenario& s) {
  const Locate ls = locate(s.start.position(), s.map);
  if (!ls.interior() || ls.region != s.start_region)
    throw std::invalid_argument(
        "start pose is not in the interior of region " +
        std::to_string(s.start_region));
  const Locate lg = locate(s.goal.position(), s.map);
  if (!lg.interior() || lg.region != s.goal_region)
    throw std::invalid_argument("goal pose is not in the interior of region " +
                                std::to_string(s.goal_region));
}

/// One control piece: sign class in {-1, 0, +1}; the applied angular rate is
/// sign * u_max of whichever region the particle currently occupies.
struct ScheduleEntry {
  int sign = 0;
  double duration = 0.0;
};
using ControlSchedule = std::vector<ScheduleEntry>;

struct CrossingEvent {
  double t = 0.0;       // global time of the crossing
  Vec2 where;
  int from = -1;
  int to = -1;
};

struct SimResult {
  Configuration end;
  double duration = 0.0;
  std::vector<CrossingEvent> events;
  int end_region = -1;
};

namespace detail {

// Earliest time in (guard, horizon] at which the motion leaves the half
// plane cross(e, p - a) >= 0, or a negative value if it never does.
inline double exit_time_half_plane(const Configuration& c, int sign, double v,
                                   double u_max, double horizon, Vec2 a,
                                   Vec2 e) {
  constexpr double kGuard = 1e-12;
  if (sign == 0) {
    const Vec2 dir = c.direction();
    const double g0 = cross(e, c.position() - a);
    const double slope = v * cross(e, dir);
    if (slope >= -1e-18) return -1.0;
    const double t = -g0 / slope;
    if (t > horizon || t < kGuard) return -1.0;
    return t;
  }
  const double u = sign * u_max;
  const double k = v / u;
  const Vec2 center{c.x + k * std::cos(c.theta), c.y - k * std::sin(c.theta)};
  const double c0 = cross(e, center - a);
  const double amp = k * norm(e);
  const double ph = std::atan2(e.y, e.x);
  // g(t) = c0 + amp * sin(theta(t) + ph), theta(t) = theta0 + u t
  const double w = -c0 / amp;
  if (std::abs(w) > 1.0) return -1.0;
  const double x0 = std::asin(std::clamp(w, -1.0, 1.0));
  double best = -1.0;
  for (const double xb : {x0, kPi - x0}) {
    // thetas solving the root equation, shifted into the swept range
    const double th_root = xb - ph;
    double t = (th_root - c.theta) / u;
    const double period = kTwoPi / std::abs(u);
    t -= period * std::floor(t / period);
    for (; t <= horizon; t += period) {
      if (t < kGuard) continue;
      const double th = c.theta + u * t;
      const double slope = amp * std::cos(th + ph) * u;
      if (slope < -1e-15 * std::max(1.0, std::abs(amp))) {
        if (best < 0.0 || t < best) best = t;
        break;
      }
    }
  }
  return best;
}

// Bisection polish of an exit event so the crossing point is accurate to
// better than 1e-10 length units.
inline double polish_exit(const Configuration& c, int sign, double v,
                          double u_max, const Polygon& poly, double t_guess,
                          double horizon) {
  auto inset_at = [&](double t) {
    const Configuration q =
        propagate(c, sign == 0 ? SegmentKind::Straight
                               : (sign > 0 ? SegmentKind::CwArc
                                           : SegmentKind::CcwArc),
                  t, v, u_max);
    return signed_inset(poly, q.position());
  };
  double h = std::max(1e-9, 1e-9 * t_guess);
  double lo = std::max(0.0, t_guess - h);
  double hi = std::min(horizon, t_guess + h);
  if (!(inset_at(lo) > 0.0 && inset_at(hi) < 0.0)) return t_guess;
  for (int i = 0; i < 80 && (hi - lo) * v > 1e-12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (inset_at(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Integrates a control schedule exactly from `start`, switching region
/// parameters at boundary crossings. Throws LeftDomain if the trajectory
/// exits the union of regions (including vertex grazes).
inline SimResult simulate(const Configuration& start,
                          const ControlSchedule& sched, const RegionMap& map) {
  const Locate loc = locate(start.position(), map);
  if (loc.outside())
    throw std::invalid_argument("simulate: start outside the region map");
  int region = loc.region;

  SimResult res;
  Configuration cur = start;
  double t_global = 0.0;
  int guard = 0;
  for (const ScheduleEntry& entry : sched) {
    if (entry.duration < 0.0)
      throw std::invalid_argument("simulate: negative duration");
    double remaining = entry.duration;
    while (remaining > 0.0) {
      if (++guard > 100000)
        throw std::runtime_error("simulate: event budget exceeded");
      const Region& rg = map.region(region);
      const SegmentKind kind = entry.sign == 0
                                   ? SegmentKind::Straight
                                   : (entry.sign > 0 ? SegmentKind::CwArc
                                                     : SegmentKind::CcwArc);
      // Earliest exit across this region's edges.
      double t_exit = -1.0;
      const Polygon& poly = rg.polygon;
      for (std::size_t i = 0; i < poly.size(); ++i) {
        const Vec2 a = poly[i];
        const Vec2 e = poly[(i + 1) % poly.size()] - a;
        const double t = detail::exit_time_half_plane(
            cur, entry.sign, rg.v, rg.u_max, remaining, a, e);
        if (t > 0.0 && (t_exit < 0.0 || t < t_exit)) t_exit = t;
      }
      if (t_exit < 0.0) {
        cur = propagate(cur, kind, remaining, rg.v, rg.u_max);
        t_global += remaining;
        remaining = 0.0;
        break;
      }
      t_exit = detail::polish_exit(cur, entry.sign, rg.v, rg.u_max, poly,
                                   t_exit, remaining);
      cur = propagate(cur, kind, t_exit, rg.v, rg.u_max);
      t_global += t_exit;
      remaining -= t_exit;

      // Identify the neighbor sharing the crossed edge at this point.
      int next_region = -1;
      for (const Adjacency& ad : map.adjacency) {
        if (ad.a != region && ad.b != region) continue;
        const Vec2 te = ad.tangent();
        const Vec2 d0 = cur.position() - ad.p0;
        if (std::abs(cross(te, d0)) > 1e-7) continue;
        const double along = dot(te, d0);
        if (along < 1e-9 || along > ad.length() - 1e-9) continue;
        next_region = ad.a == region ? ad.b : ad.a;
        break;
      }
      if (next_region < 0)
        throw LeftDomain("trajectory left the region map at (" +
                         std::to_string(cur.x) + ", " + std::to_string(cur.y) +
                         ")");
      res.events.push_back({t_global, cur.position(), region, next_region});
      region = next_region;
    }
  }
  res.end = cur;
  res.duration = t_global;
  res.end_region = region;
  return res;
}

/// Replays a finished path as a control schedule (spanning pieces merge into
/// single entries; the simulator re-discovers the crossings).
inline ControlSchedule to_control_schedule(const PathSolution& p) {
  ControlSchedule sched;
  for (const Phase& ph : p.phases)
    for (const Segment& s : ph.segments) {
      if (s.duration <= 0.0) continue;
      const int sign = control_sign(s.kind);
      if (!sched.empty() && sched.back().sign == sign)
        sched.back().duration += s.duration;
      else
        sched.push_back({sign, s.duration});
    }
  return sched;
}

struct OracleOptions {
  int max_pieces = 9;          // K: bound on control pieces
  double endpoint_tol = 1e-4;  // required endpoint match (length and rad)
  int coarse_iters = 16;       // golden-section iterations, screening pass
  int fine_iters = 48;         // golden-section iterations, refinement pass
  double keep_factor = 1.10;   // refine sequences within this of the best
  double keep_slack = 0.5;
  unsigned threads = 0;        // 0 = hardware concurrency
};

struct OracleResult {
  double time = 0.0;
  ControlSchedule schedule;
  Configuration end;
  double pos_err = 0.0;
  double ang_err = 0.0;
};

namespace detail {

struct SeqEval {
  double objective = std::numeric_limits<double>::infinity();
  double time = 0.0;
  double pos_err = 0.0;
  double ang_err = 0.0;
  std::vector<double> durations;
};

inline double golden_min(const std::function<double(double)>& f, double lo,
                         double hi, int iters, double* arg) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  *arg = f1 <= f2 ? x1 : x2;
  return std::min(f1, f2);
}

inline SeqEval optimize_durations(const Scenario& sc,
                                  const std::vector<int>& signs,
                                  double t_scale, int golden_iters,
                                  double endpoint_tol) {
  const std::size_t k = signs.size();
  std::vector<double> d(k, t_scale / (2.0 * static_cast<double>(k)));

  double penalty = 1e4;
  auto mismatch = [&](const std::vector<double>& dur, double* time,
                      double* pos_err, double* ang_err) {
    ControlSchedule sched(k);
    for (std::size_t i = 0; i < k; ++i) sched[i] = {signs[i], dur[i]};
    try {
      const SimResult sim = simulate(sc.start, sched, sc.map);
      *time = sim.duration;
      *pos_err = distance(sim.end.position(), sc.goal.position());
      *ang_err = std::abs(normalize_angle(sim.end.theta - sc.goal.theta));
      return false;
    } catch (const LeftDomain&) {
      *time = 0.0;
      for (double v : dur) *time += v;
      *pos_err = 1e3;
      *ang_err = kPi;
      return true;
    }
  };
  auto objective = [&](const std::vector<double>& dur) {
    double time, pe, ae;
    mismatch(dur, &time, &pe, &ae);
    return time + penalty * (pe + ae);
  };

  SeqEval best;
  double cur_obj = objective(d);
  for (int round = 0; round < 5; ++round) {
    double window = t_scale / 3.0;
    for (int sweep = 0; sweep < 24; ++sweep) {
      const double before = cur_obj;
      for (std::size_t i = 0; i < k; ++i) {
        const double lo = std::max(0.0, d[i] - window);
        const double hi = d[i] + window;
        double arg = d[i];
        const double val = golden_min(
            [&](double x) {
              std::vector<double> trial = d;
              trial[i] = x;
              return objective(trial);
            },
            lo, hi, golden_iters, &arg);
        if (val < cur_obj) {
          cur_obj = val;
          d[i] = arg;
        }
      }
      window = std::max(window * 0.55, 1e-9 * t_scale);
      if (before - cur_obj < 1e-9 * (1.0 + cur_obj) && sweep >= 3) break;
    }
    double time, pe, ae;
    mismatch(d, &time, &pe, &ae);
    if (pe < endpoint_tol && ae < endpoint_tol) {
      best.objective = cur_obj;
      best.time = time;
      best.pos_err = pe;
      best.ang_err = ae;
      best.durations = d;
      return best;
    }
    penalty *= 10.0;
    cur_obj = objective(d);
  }
  double time, pe, ae;
  mismatch(d, &time, &pe, &ae);
  best.objective = cur_obj;
  best.time = time;
  best.pos_err = pe;
  best.ang_err = ae;
  best.durations = d;
  return best;
}

inline void enumerate_sign_sequences(int max_len,
                                     std::vector<std::vector<int>>* out) {
  std::vector<int> cur;
  auto rec = [&](auto&& self) -> void {
    if (!cur.empty()) out->push_back(cur);
    if (static_cast<int>(cur.size()) == max_len) return;
    for (int s : {-1, 0, 1}) {
      if (!cur.empty() && cur.back() == s) continue;
      cur.push_back(s);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
}

}  // namespace detail

/// Deterministic brute-force search over bang-singular control structures.
/// Screens every sign sequence of length <= K with a coarse duration
/// optimization, then fully refines all sequences near the incumbent.
/// Throws NoFeasibleFound when no schedule meets the endpoint tolerance.
inline OracleResult brute_force_min_time(const Scenario& sc,
                                         const OracleOptions& opt = {}) {
  if (opt.max_pieces < 1)
    throw std::invalid_argument("oracle needs max_pieces >= 1");
  validate_scenario(sc);

  double v_min = std::numeric_limits<double>::infinity();
  double r_max = 0.0;
  for (const Region& rg : sc.map.regions) {
    v_min = std::min(v_min, rg.v);
    r_max = std::max(r_max, rg.r);
  }
  const double t_scale =
      2.0 * (distance(sc.start.position(), sc.goal.position()) +
             kTwoPi * r_max) /
      v_min;

  std::vector<std::vector<int>> seqs;
  detail::enumerate_sign_sequences(opt.max_pieces, &seqs);

  const unsigned n_threads = std::max(
      1u, opt.threads ? opt.threads : std::thread::hardware_concurrency());
  auto run_pass = [&](int iters,
                      const std::vector<std::size_t>& idx) {
    std::vector<detail::SeqEval> evals(idx.size());
    auto worker = [&](unsigned w) {
      for (std::size_t i = w; i < idx.size(); i += n_threads)
        evals[i] = detail::optimize_durations(sc, seqs[idx[i]], t_scale, iters,
                                              opt.endpoint_tol);
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n_threads; ++w) pool.emplace_back(worker, w);
    worker(0);
    for (std::thread& th : pool) th.join();
    return evals;
  };

  std::vector<std::size_t> all(seqs.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  const std::vector<detail::SeqEval> coarse = run_pass(opt.coarse_iters, all);

  double best_coarse = std::numeric_limits<double>::infinity();
  for (const detail::SeqEval& e : coarse)
    best_coarse = std::min(best_coarse, e.objective);
  const double keep =
      best_coarse * opt.keep_factor + opt.keep_slack;
  std::vector<std::size_t> promising;
  for (std::size_t i = 0; i < coarse.size(); ++i)
    if (coarse[i].objective <= keep) promising.push_back(i);
  const std::vector<detail::SeqEval> fine =
      run_pass(opt.fine_iters, promising);

  const detail::SeqEval* best = nullptr;
  std::size_t best_seq = 0;
  for (std::size_t i = 0; i < fine.size(); ++i) {
    const detail::SeqEval& e = fine[i];
    if (e.pos_err >= opt.endpoint_tol || e.ang_err >= opt.endpoint_tol)
      continue;
    if (!best || e.time < best->time - 1e-12) {
      best = &e;
      best_seq = promising[i];
    }
  }
  if (!best)
    throw NoFeasibleFound("no control schedule matched the goal within " +
                          std::to_string(opt.endpoint_tol));

  OracleResult out;
  out.time = best->time;
  out.pos_err = best->pos_err;
  out.ang_err = best->ang_err;
  for (std::size_t i = 0; i < seqs[best_seq].size(); ++i)
    out.schedule.push_back({seqs[best_seq][i], best->durations[i]});
  ControlSchedule replay = out.schedule;
  out.end = simulate(sc.start, replay, sc.map).end;
  return out;
}

}  // namespace rdubins

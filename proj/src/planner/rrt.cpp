#include <algorithm>
#include <cmath>
#include <limits>

#include "rcplan/error.hpp"
#include "rcplan/oracle/rng.hpp"
#include "rcplan/planner/planner.hpp"

namespace rcplan::planner {

using safety::Segment;
using safety::Trajectory;
using Point = std::vector<double>;

void PlannerParams::validate() const {
  if (max_iterations == 0) throw InputError("max_iterations must be positive");
  if (!(step > 0.0)) throw InputError("step must be positive");
  if (goal_connect_period == 0) throw InputError("goal_connect_period must be positive");
  if (!(w0 > 0.0)) throw InputError("w0 must be positive");
  if (!(growth > 0.0)) throw InputError("growth must be positive");
  if (growth_every == 0) throw InputError("growth_every must be positive");
  if (segments == 0) throw InputError("segments must be positive");
}

std::string_view to_string(PlanStatus s) {
  return s == PlanStatus::Solved ? "solved" : "no_solution";
}

namespace {

constexpr std::uint64_t kPlannerStream = 0x706c616e;  // "plan"

double distance(const Point& a, const Point& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Uniform over the workspace box, or over a box of half-width w around a
/// point of the start-goal line while w is smaller than the workspace.
class Sampler {
 public:
  Sampler(const Scenario& sc, const PlannerParams& pp)
      : sc_(sc), rng_(pp.seed, kPlannerStream), line_(pp.line_init), w_(pp.w0),
        growth_(pp.growth), every_(pp.growth_every) {
    for (std::size_t i = 0; i < sc.dim(); ++i)
      extent_ = std::max(extent_, sc.workspace_hi[i] - sc.workspace_lo[i]);
  }

  /// `u` fixes the line parameter; otherwise it is drawn.
  Point draw(std::optional<double> u = std::nullopt) {
    Point q(sc_.dim());
    if (line_ && w_ < extent_) {
      const double s = u ? *u : rng_.uniform();
      for (std::size_t i = 0; i < q.size(); ++i) {
        const double base = sc_.start[i] + s * (sc_.goal[i] - sc_.start[i]);
        q[i] = std::clamp(base + (2.0 * rng_.uniform() - 1.0) * w_, sc_.workspace_lo[i],
                          sc_.workspace_hi[i]);
      }
    } else {
      for (std::size_t i = 0; i < q.size(); ++i)
        q[i] = sc_.workspace_lo[i] + rng_.uniform() * (sc_.workspace_hi[i] - sc_.workspace_lo[i]);
    }
    return q;
  }

  /// A rejected edge, tree extension or goal connection alike.
  void failed() {
    if (line_ && ++failures_ % every_ == 0) w_ *= growth_;
  }

  double uniform() { return rng_.uniform(); }

 private:
  const Scenario& sc_;
  oracle::SplitMix64 rng_;
  bool line_;
  double w_;
  double growth_;
  std::size_t every_;
  std::size_t failures_ = 0;
  double extent_ = 0.0;
};

double straight_line_energy(const Scenario& sc) {
  const double d = distance(sc.start, sc.goal);
  return d * d / (sc.tf - sc.t0);
}

PlanResult finish(const Scenario& sc, Trajectory traj, PlanStats stats) {
  PlanResult r;
  r.stats = stats;
  r.energy_lower_bound = straight_line_energy(sc);
  r.report = safety::verify_trajectory(sc.contours, traj);
  if (!r.report.safe) {
    // Never hand out an uncertified trajectory.
    r.status = PlanStatus::NoSolution;
    return r;
  }
  r.status = PlanStatus::Solved;
  r.energy = trajectory_energy(traj);
  r.trajectory = std::move(traj);
  return r;
}

PlanResult no_solution(const Scenario& sc, PlanStats stats) {
  PlanResult r;
  r.stats = stats;
  r.energy_lower_bound = straight_line_energy(sc);
  return r;
}

}  // namespace

PlanResult plan_rrt_static(const Scenario& sc, const PlannerParams& pp) {
  pp.validate();
  if (sc.dynamic()) {
    throw InputError("the static planner needs time-invariant obstacles; use the dynamic planner");
  }
  check_endpoints(sc);

  PlanStats stats;
  // Static certificates do not depend on timing: check edges on [0, 1].
  auto edge_ok = [&](const Point& a, const Point& b) {
    ++stats.edge_checks;
    const bool ok = safety::segment_is_safe(sc.contours, Segment::linear(a, b, 0.0, 1.0));
    if (!ok) ++stats.rejected_edges;
    return ok;
  };

  std::vector<Point> vertices{sc.start};
  std::vector<std::size_t> parent{0};
  std::optional<std::size_t> reached;  // vertex joined to the goal

  if (edge_ok(sc.start, sc.goal)) {
    reached = 0;
  } else {
    Sampler sampler(sc, pp);
    std::size_t added = 0;
    while (stats.iterations < pp.max_iterations && !reached) {
      ++stats.iterations;
      Point q = sampler.draw();
      std::size_t near = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t v = 0; v < vertices.size(); ++v) {
        const double d = distance(vertices[v], q);
        if (d < best) {
          best = d;
          near = v;
        }
      }
      if (best < 1e-12) continue;
      if (best > pp.step) {
        for (std::size_t i = 0; i < q.size(); ++i)
          q[i] = vertices[near][i] + (q[i] - vertices[near][i]) * (pp.step / best);
      }
      if (!edge_ok(vertices[near], q)) {
        sampler.failed();
        continue;
      }
      vertices.push_back(q);
      parent.push_back(near);
      if (++added % pp.goal_connect_period != 0) continue;
      if (distance(q, sc.goal) > 1e-12 && edge_ok(q, sc.goal)) {
        reached = vertices.size() - 1;
      } else {
        sampler.failed();
      }
    }
  }
  stats.vertices = vertices.size();
  if (!reached) return no_solution(sc, stats);

  std::vector<Point> path{sc.goal};
  for (std::size_t v = *reached;; v = parent[v]) {
    path.push_back(vertices[v]);
    if (v == 0) break;
  }
  std::reverse(path.begin(), path.end());
  Trajectory traj =
      Trajectory::piecewise_linear(path, safety::arc_length_times(path, sc.t0, sc.tf));
  if (pp.refine && path.size() > 2) {
    vertices.push_back(sc.goal);
    traj = refine_shortest_path(vertices, traj, sc, &stats);
  }
  return finish(sc, std::move(traj), stats);
}

PlanResult plan_rrt_dynamic(const Scenario& sc, const PlannerParams& pp) {
  pp.validate();
  check_endpoints(sc);
  const std::size_t s = pp.segments;
  std::vector<double> tau(s + 1);
  for (std::size_t i = 0; i <= s; ++i)
    tau[i] = i == s ? sc.tf : sc.t0 + (sc.tf - sc.t0) * static_cast<double>(i) / s;

  PlanStats stats;
  auto edge_ok = [&](const Point& a, const Point& b, std::size_t interval) {
    ++stats.edge_checks;
    const bool ok =
        safety::segment_is_safe(sc.contours, Segment::linear(a, b, tau[interval - 1], tau[interval]));
    if (!ok) ++stats.rejected_edges;
    return ok;
  };

  // First attempt: the straight line, s pieces on the uniform tiling.
  {
    std::vector<Point> line(s + 1, sc.start);
    bool ok = true;
    for (std::size_t i = 1; i <= s && ok; ++i) {
      const double u = static_cast<double>(i) / s;
      for (std::size_t k = 0; k < sc.dim(); ++k)
        line[i][k] = i == s ? sc.goal[k] : sc.start[k] + u * (sc.goal[k] - sc.start[k]);
      ok = edge_ok(line[i - 1], line[i], i);
    }
    if (ok) {
      stats.vertices = s + 1;
      return finish(sc, Trajectory::piecewise_linear(line, tau), stats);
    }
  }

  struct Node {
    Point x;
    std::size_t parent;
  };
  std::vector<std::vector<Node>> layers(s);
  layers[0].push_back({sc.start, 0});
  Sampler sampler(sc, pp);
  std::optional<std::size_t> reached;  // index in the last interior layer
  std::size_t added_last = 0;

  while (s > 1 && stats.iterations < pp.max_iterations && !reached) {
    ++stats.iterations;
    std::vector<std::size_t> open;
    for (std::size_t i = 1; i < s; ++i)
      if (!layers[i - 1].empty()) open.push_back(i);
    const std::size_t layer =
        open[std::min(open.size() - 1, static_cast<std::size_t>(sampler.uniform() * open.size()))];
    const Point q = sampler.draw(static_cast<double>(layer) / s);

    const auto& prev = layers[layer - 1];
    std::size_t near = 0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < prev.size(); ++v) {
      const double d = distance(prev[v].x, q);
      if (d < best) {
        best = d;
        near = v;
      }
    }
    if (!edge_ok(prev[near].x, q, layer)) {
      sampler.failed();
      continue;
    }
    layers[layer].push_back({q, near});
    if (layer != s - 1 || ++added_last % pp.goal_connect_period != 0) continue;
    if (edge_ok(q, sc.goal, s)) {
      reached = layers[layer].size() - 1;
    } else {
      sampler.failed();
    }
  }
  for (const auto& l : layers) stats.vertices += l.size();
  if (!reached) return no_solution(sc, stats);

  std::vector<Point> path(s + 1);
  path[s] = sc.goal;
  std::size_t idx = *reached;
  for (std::size_t i = s - 1;; --i) {
    path[i] = layers[i][idx].x;
    idx = layers[i][idx].parent;
    if (i == 0) break;
  }
  return finish(sc, Trajectory::piecewise_linear(path, tau), stats);
}

}  // namespace rcplan::planner

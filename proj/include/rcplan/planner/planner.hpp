#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rcplan/planner/scenario.hpp"
#include "rcplan/poly/uni_poly.hpp"
#include "rcplan/safety/trajectory.hpp"
#include "rcplan/safety/verify.hpp"

namespace rcplan::planner {

struct PlannerParams {
  std::uint64_t seed = 1;
  std::size_t max_iterations = 5000;
  /// Longest edge added by the static planner.
  double step = 0.25;
  /// Try the goal after every this many new vertices.
  std::size_t goal_connect_period = 1;
  /// Sample around the start-goal line instead of the whole box.
  bool line_init = true;
  /// Initial half-width of the line neighborhood.
  double w0 = 0.1;
  /// Half-width multiplier, applied after every growth_every rejected
  /// edges (tree extensions and goal connections).
  double growth = 1.5;
  std::size_t growth_every = 10;
  /// Linear pieces in dynamic mode.
  std::size_t segments = 2;
  bool refine = true;

  /// Throws InputError on a non-positive field.
  void validate() const;
};

struct PlanStats {
  std::size_t iterations = 0;
  std::size_t vertices = 0;
  std::size_t edge_checks = 0;
  std::size_t rejected_edges = 0;
};

enum class PlanStatus { Solved, NoSolution };

std::string_view to_string(PlanStatus s);

struct PlanResult {
  PlanStatus status = PlanStatus::NoSolution;
  /// Present iff solved; always verified safe.
  std::optional<safety::Trajectory> trajectory;
  safety::SafetyReport report;
  double energy = 0.0;
  /// ||goal - start||^2 / (tf - t0); attained only by the straight line.
  double energy_lower_bound = 0.0;
  PlanStats stats;

  bool solved() const { return status == PlanStatus::Solved; }
};

/// Integral of ||x'(t)||^2 over the trajectory, exact.
double trajectory_energy(const safety::Trajectory& traj);

/// RRT over straight edges, each admitted only with a safety certificate.
/// Static obstacles only (InputError otherwise).
PlanResult plan_rrt_static(const Scenario& sc, const PlannerParams& pp);

/// Layered RRT over the uniform tiling of the horizon into pp.segments
/// intervals: layer i holds positions at the end of interval i.
PlanResult plan_rrt_dynamic(const Scenario& sc, const PlannerParams& pp);

/// Shortest source-target path over the complete graph on `points` with
/// Euclidean weights, restricted to edges accepted by `edge_ok`. Edges are
/// checked lazily (only along candidate shortest paths) and each at most
/// once; the result equals Dijkstra on the fully checked graph. Returns an
/// empty vector when the target is unreachable.
std::vector<std::size_t> shortest_verified_path(
    const std::vector<std::vector<double>>& points, std::size_t source, std::size_t target,
    const std::function<bool(std::size_t, std::size_t)>& edge_ok,
    std::size_t* edge_checks = nullptr);

/// Roadmap over `vertices` (which must contain the unrefined path's
/// waypoints) with only certified edges, shortest path, constant-speed
/// re-timing over the unrefined horizon, fresh verification. Falls back to
/// `unrefined` if verification fails or energy would grow.
safety::Trajectory refine_shortest_path(const std::vector<std::vector<double>>& vertices,
                                        const safety::Trajectory& unrefined, const Scenario& sc,
                                        PlanStats* stats = nullptr);

struct OptimizeParams {
  std::size_t iterations = 2000;
  double step = 0.1;
  /// Step multiplier per iteration.
  double decay = 0.998;
  std::uint64_t seed = 1;
};

/// Moves one interior waypoint coordinate at a time, keeping junction
/// times; a move is kept only if energy strictly drops and both adjacent
/// segments stay certified safe.
safety::Trajectory optimize_local(const safety::Trajectory& traj, const Scenario& sc,
                                  const OptimizeParams& op);

struct AverageRisk {
  bool holds = false;
  /// (1 - delta) E[P^2] - E[P]^2 with t ~ Uniform[t0, tf].
  double lhs_risk = 0.0;
  /// E[P] with t ~ Uniform[t0, tf].
  double lhs_sign = 0.0;
};

/// Time-averaged Cantelli test of one polynomial curve against a static
/// obstacle. Dynamic obstacles throw StructuralError.
AverageRisk average_risk_bound(std::span<const poly::UniPoly> curves,
                               const risk::UncertainObstacle& obstacle, double delta, double t0,
                               double tf);

}  // namespace rcplan::planner

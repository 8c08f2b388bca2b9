#pragma once

#include <string>
#include <vector>

#include "rcplan/risk/contour.hpp"
#include "rcplan/risk/obstacle.hpp"

namespace rcplan::planner {

/// Planning problem: workspace box, obstacles, risk level, endpoints and
/// horizon, with every obstacle's contour built once up front.
struct Scenario {
  std::vector<std::string> state_vars;
  std::vector<double> workspace_lo;
  std::vector<double> workspace_hi;
  std::vector<risk::ObstaclePtr> obstacles;
  double delta = 0.1;
  std::vector<double> start;
  std::vector<double> goal;
  double t0 = 0.0;
  double tf = 1.0;
  std::vector<risk::RiskContour> contours;

  std::size_t dim() const { return state_vars.size(); }
  /// True iff some obstacle moves.
  bool dynamic() const;
};

/// Validates dimensions, delta and horizon (InputError) and builds the
/// contour cache.
Scenario make_scenario(std::vector<std::string> state_vars, std::vector<double> workspace_lo,
                       std::vector<double> workspace_hi, std::vector<risk::ObstaclePtr> obstacles,
                       double delta, std::vector<double> start, std::vector<double> goal,
                       double t0, double tf);

/// Throws InputError naming the first contour that excludes the start (at
/// t0) or the goal (at tf).
void check_endpoints(const Scenario& sc);

}  // namespace rcplan::planner

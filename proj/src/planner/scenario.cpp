#include "rcplan/planner/scenario.hpp"

#include <algorithm>
#include <cstdio>

#include "rcplan/error.hpp"

namespace rcplan::planner {

bool Scenario::dynamic() const {
  return std::any_of(obstacles.begin(), obstacles.end(), [](const auto& o) { return o->dynamic(); });
}

Scenario make_scenario(std::vector<std::string> state_vars, std::vector<double> workspace_lo,
                       std::vector<double> workspace_hi, std::vector<risk::ObstaclePtr> obstacles,
                       double delta, std::vector<double> start, std::vector<double> goal,
                       double t0, double tf) {
  const std::size_t n = state_vars.size();
  if (n == 0) throw InputError("scenario has no state variables");
  auto need = [n](const std::vector<double>& v, const char* what) {
    if (v.size() != n) {
      throw InputError(std::string(what) + " has " + std::to_string(v.size()) +
                       " entries, expected " + std::to_string(n));
    }
  };
  need(workspace_lo, "workspace.min");
  need(workspace_hi, "workspace.max");
  need(start, "start");
  need(goal, "goal");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(workspace_lo[i] < workspace_hi[i]))
      throw InputError("workspace.min must be below workspace.max on every axis");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("delta must lie in [0, 1]");
  if (!(t0 < tf)) throw InputError("horizon needs t0 < tf");

  Scenario sc;
  for (const auto& o : obstacles) {
    const auto names = o->space()->indices(poly::VarClass::State);
    if (names.size() != n) {
      throw InputError("obstacle '" + o->name() + "' has " + std::to_string(names.size()) +
                       " state variables, scenario has " + std::to_string(n));
    }
    for (std::size_t i = 0; i < n; ++i) {
      if ((*o->space())[names[i]].name != state_vars[i])
        throw InputError("obstacle '" + o->name() + "' state variables differ from the scenario's");
    }
    sc.contours.push_back(risk::build_contour(o, delta));
  }
  sc.state_vars = std::move(state_vars);
  sc.workspace_lo = std::move(workspace_lo);
  sc.workspace_hi = std::move(workspace_hi);
  sc.obstacles = std::move(obstacles);
  sc.delta = delta;
  sc.start = std::move(start);
  sc.goal = std::move(goal);
  sc.t0 = t0;
  sc.tf = tf;
  return sc;
}

void check_endpoints(const Scenario& sc) {
  auto check = [&](const std::vector<double>& x, double t, const char* which) {
    for (const auto& c : sc.contours) {
      const auto ev = risk::risk_bound_at(c, x, t);
      if (!ev.member()) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s point violates the contour of obstacle '%s' at t=%g (%s)",
                      which, c.name().c_str(), t, std::string(risk::to_string(ev.verdict)).c_str());
        throw InputError(buf);
      }
    }
  };
  check(sc.start, sc.t0, "start");
  check(sc.goal, sc.tf, "goal");
}

}  // namespace rcplan::planner

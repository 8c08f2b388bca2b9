#include "rcplan/error.hpp"
#include "rcplan/planner/planner.hpp"
#include "rcplan/uncertainty/expectation.hpp"

namespace rcplan::planner {

double trajectory_energy(const safety::Trajectory& traj) {
  double e = 0.0;
  for (const auto& seg : traj.segments()) {
    for (const auto& c : seg.curves) {
      const auto v = c.derivative();
      e += (v * v).integrate(seg.t1, seg.t2);
    }
  }
  return e;
}

AverageRisk average_risk_bound(std::span<const poly::UniPoly> curves,
                               const risk::UncertainObstacle& obstacle, double delta, double t0,
                               double tf) {
  if (obstacle.dynamic()) {
    throw StructuralError("average risk is defined here for time-invariant obstacles only");
  }
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("delta must lie in [0, 1]");
  const auto& space = *obstacle.space();
  const auto ti = space.time_index();
  if (!ti) throw StructuralError("obstacle '" + obstacle.name() + "' has no time variable");

  // P(x(t), w) with t ~ Uniform[t0, tf] alongside the obstacle's w.
  const poly::MultiPoly along = poly::substitute_trajectory(obstacle.polynomial(), curves);
  uncertainty::OmegaModel model = obstacle.omega();
  model.insert_or_assign(space[*ti].name, uncertainty::Distribution::uniform(t0, tf));

  AverageRisk r;
  r.lhs_sign = uncertainty::expectation(along, model).constant_term();
  const double ep2 = uncertainty::expectation(along * along, model).constant_term();
  r.lhs_risk = (1.0 - delta) * ep2 - r.lhs_sign * r.lhs_sign;
  r.holds = r.lhs_risk <= 0.0 && r.lhs_sign <= 0.0;
  return r;
}

}  // namespace rcplan::planner

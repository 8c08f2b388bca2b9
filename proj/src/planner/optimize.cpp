#include <algorithm>

#include "rcplan/oracle/rng.hpp"
#include "rcplan/planner/planner.hpp"

namespace rcplan::planner {

namespace {

constexpr std::uint64_t kOptimizeStream = 0x6f707469;  // "opti"

/// Energy of the straight piece a -> b over dt.
double piece_energy(const std::vector<double>& a, const std::vector<double>& b, double dt) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (b[i] - a[i]) * (b[i] - a[i]);
  return s / dt;
}

}  // namespace

safety::Trajectory optimize_local(const safety::Trajectory& traj, const Scenario& sc,
                                  const OptimizeParams& op) {
  auto w = traj.waypoints();
  const auto times = traj.junction_times();
  if (w.size() < 3 || op.iterations == 0) return traj;
  // Only piecewise-linear input is reshaped; anything else is returned as is.
  for (const auto& seg : traj.segments())
    for (const auto& c : seg.curves)
      if (c.degree() > 1) return traj;

  oracle::SplitMix64 rng(op.seed, kOptimizeStream);
  const std::size_t interior = w.size() - 2, dim = w.front().size();
  double step = op.step;
  bool moved = false;
  for (std::size_t it = 0; it < op.iterations; ++it, step *= op.decay) {
    const std::size_t j = 1 + std::min(interior - 1, static_cast<std::size_t>(rng.uniform() * interior));
    const std::size_t k = std::min(dim - 1, static_cast<std::size_t>(rng.uniform() * dim));
    const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;

    auto cand = w[j];
    cand[k] = std::clamp(cand[k] + sign * step, sc.workspace_lo[k], sc.workspace_hi[k]);
    const double before = piece_energy(w[j - 1], w[j], times[j] - times[j - 1]) +
                          piece_energy(w[j], w[j + 1], times[j + 1] - times[j]);
    const double after = piece_energy(w[j - 1], cand, times[j] - times[j - 1]) +
                         piece_energy(cand, w[j + 1], times[j + 1] - times[j]);
    if (!(after < before)) continue;
    if (!safety::segment_is_safe(sc.contours,
                                 safety::Segment::linear(w[j - 1], cand, times[j - 1], times[j])) ||
        !safety::segment_is_safe(sc.contours,
                                 safety::Segment::linear(cand, w[j + 1], times[j], times[j + 1])))
      continue;
    w[j] = std::move(cand);
    moved = true;
  }
  if (!moved) return traj;
  return safety::Trajectory::piecewise_linear(w, times);
}

}  // namespace rcplan::planner

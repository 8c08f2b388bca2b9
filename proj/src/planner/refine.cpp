#include <algorithm>
#include <cmath>
#include <limits>

#include "rcplan/planner/planner.hpp"

namespace rcplan::planner {

namespace {

double distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

enum Edge : unsigned char { kUnknown = 0, kGood = 1, kBad = 2 };

}  // namespace

std::vector<std::size_t> shortest_verified_path(
    const std::vector<std::vector<double>>& points, std::size_t source, std::size_t target,
    const std::function<bool(std::size_t, std::size_t)>& edge_ok, std::size_t* edge_checks) {
  const std::size_t n = points.size();
  std::vector<unsigned char> status(n * n, kUnknown);
  auto at = [&](std::size_t a, std::size_t b) -> unsigned char& {
    return status[std::min(a, b) * n + std::max(a, b)];
  };
  constexpr double kInf = std::numeric_limits<double>::infinity();

  for (;;) {
    // Dense Dijkstra over every edge not yet known to be bad.
    std::vector<double> dist(n, kInf);
    std::vector<std::size_t> prev(n, n);
    std::vector<char> done(n, 0);
    dist[source] = 0.0;
    for (std::size_t round = 0; round < n; ++round) {
      std::size_t u = n;
      for (std::size_t v = 0; v < n; ++v)
        if (!done[v] && dist[v] < kInf && (u == n || dist[v] < dist[u])) u = v;
      if (u == n || u == target) break;
      done[u] = 1;
      for (std::size_t v = 0; v < n; ++v) {
        if (done[v] || v == u || at(u, v) == kBad) continue;
        const double d = dist[u] + distance(points[u], points[v]);
        if (d < dist[v]) {
          dist[v] = d;
          prev[v] = u;
        }
      }
    }
    if (dist[target] == kInf) return {};

    std::vector<std::size_t> path{target};
    while (path.back() != source) path.push_back(prev[path.back()]);
    std::reverse(path.begin(), path.end());

    bool all_good = true;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      auto& e = at(path[i], path[i + 1]);
      if (e != kUnknown) continue;
      if (edge_checks) ++*edge_checks;
      e = edge_ok(path[i], path[i + 1]) ? kGood : kBad;
      all_good = all_good && e == kGood;
    }
    if (all_good) return path;
  }
}

safety::Trajectory refine_shortest_path(const std::vector<std::vector<double>>& vertices,
                                        const safety::Trajectory& unrefined, const Scenario& sc,
                                        PlanStats* stats) {
  // Edges are certified without timing, which is only sound for obstacles
  // that do not move.
  if (sc.dynamic()) return unrefined;

  std::vector<std::vector<double>> points = vertices;
  auto index_of = [&](const std::vector<double>& x) {
    const auto it = std::find(points.begin(), points.end(), x);
    if (it != points.end()) return static_cast<std::size_t>(it - points.begin());
    points.push_back(x);
    return points.size() - 1;
  };
  const std::size_t source = index_of(sc.start);
  const std::size_t target = index_of(sc.goal);

  std::size_t checks = 0, rejected = 0;
  const auto path = shortest_verified_path(
      points, source, target,
      [&](std::size_t a, std::size_t b) {
        const bool ok = safety::segment_is_safe(
            sc.contours, safety::Segment::linear(points[a], points[b], 0.0, 1.0));
        rejected += ok ? 0 : 1;
        return ok;
      },
      &checks);
  if (stats) {
    stats->edge_checks += checks;
    stats->rejected_edges += rejected;
  }
  if (path.size() < 2) return unrefined;

  std::vector<std::vector<double>> waypoints;
  for (std::size_t i : path) waypoints.push_back(points[i]);
  const double t0 = unrefined.t0(), tf = unrefined.tf();
  safety::Trajectory refined =
      safety::Trajectory::piecewise_linear(waypoints, safety::arc_length_times(waypoints, t0, tf));
  if (!safety::verify_trajectory(sc.contours, refined).safe) return unrefined;
  if (trajectory_energy(refined) > trajectory_energy(unrefined)) return unrefined;
  return refined;
}

}  // namespace rcplan::planner

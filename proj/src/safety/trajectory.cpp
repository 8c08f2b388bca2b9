#include "rcplan/safety/trajectory.hpp"

#include <cmath>
#include <string>

#include "rcplan/error.hpp"

namespace rcplan::safety {

Segment::Segment(std::vector<poly::UniPoly> c, double a, double b)
    : curves(std::move(c)), t1(a), t2(b) {
  if (curves.empty()) throw StructuralError("segment without curves");
  if (!(t1 < t2)) throw StructuralError("segment interval must satisfy t1 < t2");
}

Segment Segment::linear(std::span<const double> p, std::span<const double> q, double t1,
                        double t2) {
  if (p.size() != q.size()) throw StructuralError("segment endpoints differ in dimension");
  if (!(t1 < t2)) throw StructuralError("segment interval must satisfy t1 < t2");
  std::vector<poly::UniPoly> curves;
  curves.reserve(p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double slope = (q[k] - p[k]) / (t2 - t1);
    curves.push_back(poly::UniPoly::linear(p[k] - slope * t1, slope));
  }
  return Segment(std::move(curves), t1, t2);
}

std::vector<double> Segment::position(double t) const {
  std::vector<double> x(curves.size());
  for (std::size_t k = 0; k < curves.size(); ++k) x[k] = curves[k](t);
  return x;
}

Trajectory::Trajectory(std::vector<Segment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw StructuralError("trajectory without segments");
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    const Segment& a = segments_[i];
    const Segment& b = segments_[i + 1];
    if (a.dim() != b.dim())
      throw StructuralError("segment " + std::to_string(i + 1) + " changes dimension");
    if (std::abs(a.t2 - b.t1) > kContinuityTol)
      throw StructuralError("time gap between segments " + std::to_string(i) + " and " +
                            std::to_string(i + 1));
    const auto pa = a.end();
    const auto pb = b.start();
    for (std::size_t k = 0; k < pa.size(); ++k)
      if (std::abs(pa[k] - pb[k]) > kContinuityTol)
        throw StructuralError("position jump between segments " + std::to_string(i) + " and " +
                              std::to_string(i + 1));
  }
}

Trajectory Trajectory::piecewise_linear(const std::vector<std::vector<double>>& waypoints,
                                        const std::vector<double>& times) {
  if (waypoints.size() < 2 || times.size() != waypoints.size())
    throw StructuralError("piecewise_linear needs n >= 2 waypoints and n times");
  std::vector<Segment> segs;
  segs.reserve(waypoints.size() - 1);
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
    segs.push_back(Segment::linear(waypoints[i], waypoints[i + 1], times[i], times[i + 1]));
  return Trajectory(std::move(segs));
}

std::vector<double> Trajectory::position(double t) const {
  for (const auto& s : segments_)
    if (t <= s.t2) return s.position(t);
  return segments_.back().position(t);
}

std::vector<std::vector<double>> Trajectory::waypoints() const {
  std::vector<std::vector<double>> w;
  for (const auto& s : segments_) w.push_back(s.start());
  w.push_back(segments_.back().end());
  return w;
}

std::vector<double> Trajectory::junction_times() const {
  std::vector<double> t;
  for (const auto& s : segments_) t.push_back(s.t1);
  t.push_back(segments_.back().t2);
  return t;
}

std::vector<double> arc_length_times(const std::vector<std::vector<double>>& waypoints,
                                     double t0, double tf) {
  const std::size_t n = waypoints.size();
  std::vector<double> cum(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < waypoints[i].size(); ++k) {
      const double d = waypoints[i][k] - waypoints[i - 1][k];
      d2 += d * d;
    }
    cum[i] = cum[i - 1] + std::sqrt(d2);
  }
  std::vector<double> times(n);
  const double total = cum.back();
  for (std::size_t i = 0; i < n; ++i) {
    const double frac = total > 0.0 ? cum[i] / total
                                    : static_cast<double>(i) / static_cast<double>(n - 1);
    times[i] = t0 + (tf - t0) * frac;
  }
  times.front() = t0;
  times.back() = tf;
  return times;
}

}  // namespace rcplan::safety

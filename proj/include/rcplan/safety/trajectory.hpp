#pragma once

#include <span>
#include <vector>

#include "rcplan/poly/uni_poly.hpp"

namespace rcplan::safety {

/// Tolerance for junction times and junction positions.
inline constexpr double kContinuityTol = 1e-9;

/// One polynomial piece x(t), t in [t1, t2], with t absolute.
struct Segment {
  std::vector<poly::UniPoly> curves;
  double t1 = 0.0;
  double t2 = 1.0;

  /// Throws StructuralError unless t1 < t2 and there is at least one curve.
  Segment(std::vector<poly::UniPoly> curves, double t1, double t2);

  /// Straight line from p at t1 to q at t2.
  static Segment linear(std::span<const double> p, std::span<const double> q, double t1,
                        double t2);

  std::size_t dim() const { return curves.size(); }
  std::vector<double> position(double t) const;
  std::vector<double> start() const { return position(t1); }
  std::vector<double> end() const { return position(t2); }
};

/// Consecutive segments tiling [t0, tf] with continuous position.
class Trajectory {
 public:
  /// Throws StructuralError on an empty list, a dimension change, a time
  /// gap or overlap, or a position jump at a junction.
  explicit Trajectory(std::vector<Segment> segments);

  /// Piecewise-linear path through the waypoints with junction times
  /// times[0] < times[1] < ... (one more time than segments).
  static Trajectory piecewise_linear(const std::vector<std::vector<double>>& waypoints,
                                     const std::vector<double>& times);

  const std::vector<Segment>& segments() const { return segments_; }
  std::size_t dim() const { return segments_.front().dim(); }
  double t0() const { return segments_.front().t1; }
  double tf() const { return segments_.back().t2; }
  /// Position at t, using the first segment whose interval contains t.
  std::vector<double> position(double t) const;
  /// Segment start points followed by the final end point.
  std::vector<std::vector<double>> waypoints() const;
  /// Segment start times followed by tf.
  std::vector<double> junction_times() const;

 private:
  std::vector<Segment> segments_;
};

/// Junction times that split [t0, tf] proportionally to the distances
/// between consecutive waypoints (constant speed). Zero total length falls
/// back to uniform spacing.
std::vector<double> arc_length_times(const std::vector<std::vector<double>>& waypoints,
                                     double t0, double tf);

}  // namespace rcplan::safety

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rcplan/poly/sturm.hpp"
#include "rcplan/risk/contour.hpp"
#include "rcplan/safety/trajectory.hpp"

namespace rcplan::safety {

enum class CurveKind { Risk, Sign, Psd };

std::string_view to_string(CurveKind k);

struct CurveCheck {
  std::size_t segment = 0;
  std::string obstacle;
  CurveKind curve = CurveKind::Risk;
  poly::IntervalVerdict verdict;
};

struct Violation {
  std::size_t segment = 0;
  std::string obstacle;
  CurveKind curve = CurveKind::Risk;
  /// Absent for degenerate verdicts.
  std::optional<double> witness;
};

/// Safe iff every check is certified nonpositive.
struct SafetyReport {
  bool safe = true;
  std::vector<CurveCheck> checks;
  std::optional<Violation> first_violation;
};

/// Certifies the risk, sign and psd curves of every contour over the
/// segment's own interval. An empty contour list is trivially safe.
SafetyReport verify_segment(const std::vector<risk::RiskContour>& contours, const Segment& seg);

/// Conjunction over all segments; checks fan out over OpenMP threads and
/// are reported in (segment, contour, curve) order.
SafetyReport verify_trajectory(const std::vector<risk::RiskContour>& contours,
                               const Trajectory& traj);
/// Sequential reference for verify_trajectory.
SafetyReport verify_trajectory_serial(const std::vector<risk::RiskContour>& contours,
                                      const Trajectory& traj);

/// Fast yes/no form used inside planners: stops at the first failing curve.
bool segment_is_safe(const std::vector<risk::RiskContour>& contours, const Segment& seg);

/// One line per check, then the overall verdict.
std::string to_text(const SafetyReport& report);

}  // namespace rcplan::safety

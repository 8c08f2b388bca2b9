#include "rcplan/safety/verify.hpp"

#include <array>
#include <cstdio>

#include "rcplan/error.hpp"

namespace rcplan::safety {

using poly::IntervalVerdict;
using risk::RiskContour;

std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::Risk: return "risk";
    case CurveKind::Sign: return "sign";
    case CurveKind::Psd: return "psd";
  }
  return "?";
}

namespace {

constexpr CurveKind kKinds[] = {CurveKind::Risk, CurveKind::Sign, CurveKind::Psd};

void check_dims(const std::vector<RiskContour>& contours, const Segment& seg) {
  for (const auto& c : contours)
    if (c.state_dim() != seg.dim())
      throw StructuralError("segment dimension " + std::to_string(seg.dim()) +
                            " does not match contour '" + c.name() + "'");
}

// The three verdicts of one (segment, contour) pair.
std::array<IntervalVerdict, 3> check_pair(const RiskContour& c, const Segment& seg) {
  const auto g = risk::constraint_curves(c, seg.curves, seg.t1, seg.t2);
  return {poly::certify_nonpositive(g.risk, seg.t1, seg.t2),
          poly::certify_nonpositive(g.sign, seg.t1, seg.t2),
          poly::certify_nonpositive(g.psd, seg.t1, seg.t2)};
}

SafetyReport assemble(const std::vector<RiskContour>& contours,
                      const std::vector<std::array<IntervalVerdict, 3>>& verdicts,
                      std::size_t n_segments) {
  SafetyReport report;
  report.checks.reserve(verdicts.size() * 3);
  for (std::size_t s = 0; s < n_segments; ++s) {
    for (std::size_t c = 0; c < contours.size(); ++c) {
      const auto& v = verdicts[s * contours.size() + c];
      for (std::size_t k = 0; k < 3; ++k) {
        report.checks.push_back({s, contours[c].name(), kKinds[k], v[k]});
        if (!v[k].certified()) {
          report.safe = false;
          if (!report.first_violation)
            report.first_violation = Violation{s, contours[c].name(), kKinds[k], v[k].witness};
        }
      }
    }
  }
  return report;
}

}  // namespace

SafetyReport verify_segment(const std::vector<RiskContour>& contours, const Segment& seg) {
  check_dims(contours, seg);
  std::vector<std::array<IntervalVerdict, 3>> verdicts;
  verdicts.reserve(contours.size());
  for (const auto& c : contours) verdicts.push_back(check_pair(c, seg));
  return assemble(contours, verdicts, 1);
}

SafetyReport verify_trajectory(const std::vector<RiskContour>& contours, const Trajectory& traj) {
  const auto& segs = traj.segments();
  for (const auto& s : segs) check_dims(contours, s);
  const std::size_t nc = contours.size();
  std::vector<std::array<IntervalVerdict, 3>> verdicts(segs.size() * nc);
  const auto n = static_cast<std::ptrdiff_t>(verdicts.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    verdicts[idx] = check_pair(contours[idx % nc], segs[idx / nc]);
  }
  return assemble(contours, verdicts, segs.size());
}

SafetyReport verify_trajectory_serial(const std::vector<RiskContour>& contours,
                                      const Trajectory& traj) {
  const auto& segs = traj.segments();
  for (const auto& s : segs) check_dims(contours, s);
  std::vector<std::array<IntervalVerdict, 3>> verdicts;
  verdicts.reserve(segs.size() * contours.size());
  for (const auto& s : segs)
    for (const auto& c : contours) verdicts.push_back(check_pair(c, s));
  return assemble(contours, verdicts, segs.size());
}

bool segment_is_safe(const std::vector<RiskContour>& contours, const Segment& seg) {
  for (const auto& c : contours) {
    if (c.state_dim() != seg.dim())
      throw StructuralError("segment dimension does not match contour '" + c.name() + "'");
    const auto g = risk::constraint_curves(c, seg.curves, seg.t1, seg.t2);
    // Sign first: it is the cheapest curve and fails most often.
    if (!poly::certify_nonpositive(g.sign, seg.t1, seg.t2).certified()) return false;
    if (!poly::certify_nonpositive(g.psd, seg.t1, seg.t2).certified()) return false;
    if (!poly::certify_nonpositive(g.risk, seg.t1, seg.t2).certified()) return false;
  }
  return true;
}

std::string to_text(const SafetyReport& report) {
  std::string out = "# rcplan safety report format_version=1\n";
  char buf[256];
  for (const auto& c : report.checks) {
    std::snprintf(buf, sizeof buf, "segment=%zu obstacle=%s curve=%s verdict=%s margin=%.6e",
                  c.segment, c.obstacle.c_str(), std::string(to_string(c.curve)).c_str(),
                  std::string(poly::to_string(c.verdict.outcome)).c_str(), c.verdict.margin);
    out += buf;
    if (c.verdict.witness) {
      std::snprintf(buf, sizeof buf, " witness=%.9g", *c.verdict.witness);
      out += buf;
    }
    out += '\n';
  }
  out += report.safe ? "overall=safe\n" : "overall=violated\n";
  if (report.first_violation) {
    const auto& v = *report.first_violation;
    std::snprintf(buf, sizeof buf, "first_violation segment=%zu obstacle=%s curve=%s", v.segment,
                  v.obstacle.c_str(), std::string(to_string(v.curve)).c_str());
    out += buf;
    if (v.witness) {
      std::snprintf(buf, sizeof buf, " witness=%.9g", *v.witness);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

}  // namespace rcplan::safety

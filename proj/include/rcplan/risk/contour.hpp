#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rcplan/poly/multi_poly.hpp"
#include "rcplan/poly/uni_poly.hpp"
#include "rcplan/risk/obstacle.hpp"

namespace rcplan::risk {

/// Points where E[P^2] falls below this are treated as degenerate.
inline constexpr double kEpsPsd = 1e-10;

/// Inner approximation of an obstacle's risk contour at level delta:
/// {x : (E[P^2] - E[P]^2) / E[P^2] <= delta, E[P] <= 0}, evaluated with
/// the time variable free for dynamic obstacles.
class RiskContour {
 public:
  RiskContour(ObstaclePtr source, poly::MultiPoly ep, poly::MultiPoly ep2,
              double delta, double eps_psd);

  const UncertainObstacle& obstacle() const { return *source_; }
  const ObstaclePtr& obstacle_ptr() const { return source_; }
  const std::string& name() const { return source_->name(); }
  /// E[P], free of uncertain variables.
  const poly::MultiPoly& ep() const { return ep_; }
  /// E[P^2], free of uncertain variables.
  const poly::MultiPoly& ep2() const { return ep2_; }
  double delta() const { return delta_; }
  double eps_psd() const { return eps_psd_; }
  bool dynamic() const { return source_->dynamic(); }
  std::size_t state_dim() const { return source_->state_dim(); }

 private:
  ObstaclePtr source_;
  poly::MultiPoly ep_;
  poly::MultiPoly ep2_;
  double delta_;
  double eps_psd_;
};

/// Expands E[P] and E[P^2] from the obstacle's moments. Throws InputError
/// when delta is outside [0, 1] or a required moment is unavailable.
RiskContour build_contour(ObstaclePtr obstacle, double delta, double eps_psd = kEpsPsd);

enum class Membership { Member, ExcludedBySign, ExcludedByBound, Degenerate };

std::string_view to_string(Membership m);

struct RiskEvaluation {
  std::vector<double> x;
  std::optional<double> t;
  double ep = 0.0;
  double ep2 = 0.0;
  /// Cantelli bound clipped to [0, 1]; present iff ep2 >= eps_psd.
  std::optional<double> bound;
  Membership verdict = Membership::Degenerate;

  bool member() const { return verdict == Membership::Member; }
};

/// Membership test at one point. Dynamic contours require t (StructuralError
/// otherwise); static contours ignore it.
RiskEvaluation risk_bound_at(const RiskContour& c, std::span<const double> x,
                             std::optional<double> t = std::nullopt);

/// The three polynomials in t whose joint nonpositivity on an interval is
/// segment membership:
///   risk = (1 - delta) E[P^2](x(t)) - E[P](x(t))^2
///   sign = E[P](x(t))
///   psd  = eps_psd - E[P^2](x(t))
struct ConstraintCurves {
  poly::UniPoly risk;
  poly::UniPoly sign;
  poly::UniPoly psd;
};

ConstraintCurves constraint_curves(const RiskContour& c,
                                   std::span<const poly::UniPoly> segment,
                                   double t1, double t2);

}  // namespace rcplan::risk

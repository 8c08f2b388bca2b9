#include "rcplan/risk/contour.hpp"

#include <algorithm>

#include "rcplan/error.hpp"
#include "rcplan/uncertainty/expectation.hpp"

namespace rcplan::risk {

using poly::MultiPoly;
using poly::UniPoly;
using poly::VarClass;

RiskContour::RiskContour(ObstaclePtr source, MultiPoly ep, MultiPoly ep2, double delta,
                         double eps_psd)
    : source_(std::move(source)),
      ep_(std::move(ep)),
      ep2_(std::move(ep2)),
      delta_(delta),
      eps_psd_(eps_psd) {}

RiskContour build_contour(ObstaclePtr obstacle, double delta, double eps_psd) {
  if (!obstacle) throw StructuralError("build_contour: null obstacle");
  if (!(delta >= 0.0 && delta <= 1.0)) throw InputError("risk level must lie in [0, 1]");
  const MultiPoly& p = obstacle->polynomial();
  MultiPoly ep = uncertainty::expectation(p, obstacle->omega());
  MultiPoly ep2 = uncertainty::expectation(p * p, obstacle->omega());
  return RiskContour(std::move(obstacle), std::move(ep), std::move(ep2), delta, eps_psd);
}

std::string_view to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::ExcludedBySign: return "excluded-by-sign";
    case Membership::ExcludedByBound: return "excluded-by-bound";
    case Membership::Degenerate: return "degenerate";
  }
  return "?";
}

RiskEvaluation risk_bound_at(const RiskContour& c, std::span<const double> x,
                             std::optional<double> t) {
  const auto& space = *c.ep().space();
  const auto& state = space.indices(VarClass::State);
  if (x.size() != state.size())
    throw StructuralError("point has " + std::to_string(x.size()) + " coordinates, contour '" +
                          c.name() + "' expects " + std::to_string(state.size()));
  if (c.dynamic() && !t)
    throw StructuralError("dynamic contour '" + c.name() + "' needs a time");

  std::vector<double> values(space.size(), 0.0);
  for (std::size_t k = 0; k < state.size(); ++k) values[state[k]] = x[k];
  if (t && space.time_index()) values[*space.time_index()] = *t;

  RiskEvaluation r;
  r.x.assign(x.begin(), x.end());
  r.t = c.dynamic() ? t : std::nullopt;
  r.ep = c.ep().evaluate(values);
  r.ep2 = c.ep2().evaluate(values);
  if (r.ep2 < c.eps_psd()) {
    r.verdict = Membership::Degenerate;
    return r;
  }
  r.bound = std::clamp((r.ep2 - r.ep * r.ep) / r.ep2, 0.0, 1.0);
  if (r.ep > 0.0) {
    r.verdict = Membership::ExcludedBySign;
  } else if ((1.0 - c.delta()) * r.ep2 - r.ep * r.ep > 0.0) {
    r.verdict = Membership::ExcludedByBound;
  } else {
    r.verdict = Membership::Member;
  }
  return r;
}

ConstraintCurves constraint_curves(const RiskContour& c, std::span<const UniPoly> segment,
                                   double t1, double t2) {
  if (!(t1 < t2)) throw StructuralError("constraint_curves requires t1 < t2");
  if (segment.size() != c.state_dim())
    throw StructuralError("segment has " + std::to_string(segment.size()) +
                          " curves, contour '" + c.name() + "' expects " +
                          std::to_string(c.state_dim()));
  const UniPoly ep = poly::compose_univariate(c.ep(), segment);
  const UniPoly ep2 = poly::compose_univariate(c.ep2(), segment);
  ConstraintCurves g;
  g.risk = (1.0 - c.delta()) * ep2 - ep * ep;
  g.sign = ep;
  g.psd = UniPoly::constant(c.eps_psd()) - ep2;
  return g;
}

}  // namespace rcplan::risk

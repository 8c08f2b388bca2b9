#pragma once

#include <memory>
#include <string>

#include "rcplan/poly/multi_poly.hpp"
#include "rcplan/uncertainty/distribution.hpp"

namespace rcplan::risk {

/// Obstacle {x : P(x, w[, t]) >= 0} with independent uncertain parameters w.
class UncertainObstacle {
 public:
  /// Throws StructuralError if an uncertain variable used by P has no
  /// distribution in the model.
  UncertainObstacle(std::string name, poly::MultiPoly polynomial,
                    uncertainty::OmegaModel omega);

  const std::string& name() const { return name_; }
  const poly::MultiPoly& polynomial() const { return poly_; }
  const uncertainty::OmegaModel& omega() const { return omega_; }
  const poly::VarSpacePtr& space() const { return poly_.space(); }
  /// True iff P involves the time variable.
  bool dynamic() const { return dynamic_; }
  std::size_t state_dim() const { return poly_.space()->indices(poly::VarClass::State).size(); }

 private:
  std::string name_;
  poly::MultiPoly poly_;
  uncertainty::OmegaModel omega_;
  bool dynamic_ = false;
};

using ObstaclePtr = std::shared_ptr<const UncertainObstacle>;

}  // namespace rcplan::risk

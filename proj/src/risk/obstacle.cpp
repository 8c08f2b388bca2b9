#include "rcplan/risk/obstacle.hpp"

#include "rcplan/error.hpp"

namespace rcplan::risk {

UncertainObstacle::UncertainObstacle(std::string name, poly::MultiPoly polynomial,
                                     uncertainty::OmegaModel omega)
    : name_(std::move(name)), poly_(std::move(polynomial)), omega_(std::move(omega)) {
  const auto& space = *poly_.space();
  for (std::size_t i : space.indices(poly::VarClass::Uncertain))
    if (poly_.uses(i) && !omega_.contains(space[i].name))
      throw StructuralError("obstacle '" + name_ + "': no distribution for '" +
                            space[i].name + "'");
  if (auto ti = space.time_index()) dynamic_ = poly_.uses(*ti);
}

}  // namespace rcplan::risk

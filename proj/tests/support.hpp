#pragma once

#include <string>

#include "rcplan/io/scenario_file.hpp"
#include "rcplan/risk/obstacle.hpp"

namespace rcplan::testing {

inline std::string fixture(const std::string& name) { return std::string(RCPLAN_FIXTURES) + "/" + name; }

inline planner::Scenario load_fixture(const std::string& name) { return io::load_scenario(fixture(name)); }

/// State space {x1, x2}, uncertain w, time t.
inline poly::VarSpacePtr disc_space() {
  return poly::VarSpace::make({{"x1", poly::VarClass::State},
                               {"x2", poly::VarClass::State},
                               {"w", poly::VarClass::Uncertain},
                               {"t", poly::VarClass::Time}});
}

/// w^2 - (x1 - cx)^2 - (x2 - cy)^2 with radius w ~ dist.
inline risk::ObstaclePtr disc(uncertainty::Distribution dist, double cx = 0.0, double cy = 0.0,
                              std::string name = "disc") {
  const auto s = disc_space();
  using poly::MultiPoly;
  const auto x1 = MultiPoly::variable(s, "x1") - MultiPoly::constant(s, cx);
  const auto x2 = MultiPoly::variable(s, "x2") - MultiPoly::constant(s, cy);
  const auto w = MultiPoly::variable(s, "w");
  return std::make_shared<const risk::UncertainObstacle>(std::move(name), w * w - x1 * x1 - x2 * x2,
                                                         uncertainty::OmegaModel{{"w", dist}});
}

/// The uniform-radius disc used throughout the examples.
inline risk::ObstaclePtr example1_disc() { return disc(uncertainty::Distribution::uniform(0.3, 0.4)); }

}  // namespace rcplan::testing

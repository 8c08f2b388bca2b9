#pragma once

#include "rcplan/poly/multi_poly.hpp"
#include "rcplan/uncertainty/distribution.hpp"

namespace rcplan::uncertainty {

/// Integrates out every variable named in the model: each monomial's
/// factor w^k becomes E[w^k], with the model's variables taken as mutually
/// independent. Every uncertain variable used by p must be covered
/// (StructuralError otherwise). Model entries may also name the time
/// variable, which is how time-averaged quantities are formed.
poly::MultiPoly expectation(const poly::MultiPoly& p, const OmegaModel& model);

}  // namespace rcplan::uncertainty

#include "rcplan/uncertainty/expectation.hpp"

#include <vector>

#include "rcplan/error.hpp"

namespace rcplan::uncertainty {

using poly::MultiPoly;
using poly::VarClass;

MultiPoly expectation(const MultiPoly& p, const OmegaModel& model) {
  const auto& space = *p.space();
  struct Integrated {
    std::size_t index;
    std::vector<double> moments;
  };
  std::vector<Integrated> integrated;
  for (std::size_t i = 0; i < space.size(); ++i) {
    auto it = model.find(space[i].name);
    if (it == model.end()) {
      if (space[i].cls == VarClass::Uncertain && p.uses(i))
        throw StructuralError("no distribution for uncertain variable '" + space[i].name + "'");
      continue;
    }
    if (p.uses(i)) integrated.push_back({i, moments(it->second, p.degree(i))});
  }
  if (integrated.empty()) return p;

  MultiPoly out(p.space());
  for (const auto& [e, c] : p.terms()) {
    double coeff = c;
    poly::Exponent reduced = e;
    for (const auto& w : integrated) {
      coeff *= w.moments[e[w.index]];
      reduced[w.index] = 0;
    }
    out.add_term(reduced, coeff);
  }
  return out;
}

}  // namespace rcplan::uncertainty

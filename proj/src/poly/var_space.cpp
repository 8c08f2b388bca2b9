#include "rcplan/poly/var_space.hpp"

#include <algorithm>
#include <set>

#include "rcplan/error.hpp"

namespace rcplan::poly {

std::string_view to_string(VarClass c) {
  switch (c) {
    case VarClass::State: return "state";
    case VarClass::Uncertain: return "uncertain";
    case VarClass::Time: return "time";
  }
  return "?";
}

VarSpace::VarSpace(std::vector<Variable> vars) : vars_(std::move(vars)) {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    switch (vars_[i].cls) {
      case VarClass::State: state_.push_back(i); break;
      case VarClass::Uncertain: uncertain_.push_back(i); break;
      case VarClass::Time:
        time_ = i;
        time_list_.push_back(i);
        break;
    }
  }
}

VarSpacePtr VarSpace::make(std::vector<Variable> vars) {
  std::set<std::string> seen;
  int time_count = 0;
  for (const auto& v : vars) {
    if (v.name.empty()) throw StructuralError("variable with empty name");
    if (!seen.insert(v.name).second)
      throw StructuralError("duplicate variable name '" + v.name + "'");
    if (v.cls == VarClass::Time) ++time_count;
  }
  if (time_count > 1) throw StructuralError("more than one time variable");
  return VarSpacePtr(new VarSpace(std::move(vars)));
}

std::optional<std::size_t> VarSpace::index_of(std::string_view name) const {
  auto it = std::find_if(vars_.begin(), vars_.end(),
                         [&](const Variable& v) { return v.name == name; });
  if (it == vars_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - vars_.begin());
}

const std::vector<std::size_t>& VarSpace::indices(VarClass c) const {
  switch (c) {
    case VarClass::State: return state_;
    case VarClass::Uncertain: return uncertain_;
    case VarClass::Time: return time_list_;
  }
  return state_;
}

bool same_space(const VarSpacePtr& a, const VarSpacePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

}  // namespace rcplan::poly

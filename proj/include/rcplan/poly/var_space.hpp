#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcplan::poly {

enum class VarClass { State, Uncertain, Time };

std::string_view to_string(VarClass c);

struct Variable {
  std::string name;
  VarClass cls;

  bool operator==(const Variable&) const = default;
};

class VarSpace;
using VarSpacePtr = std::shared_ptr<const VarSpace>;

/// Ordered, immutable set of named variables shared by every polynomial
/// built over it. Names are unique and at most one variable is time.
class VarSpace {
 public:
  /// Throws StructuralError on duplicate names or more than one time variable.
  static VarSpacePtr make(std::vector<Variable> vars);

  std::size_t size() const { return vars_.size(); }
  const Variable& operator[](std::size_t i) const { return vars_[i]; }
  const std::vector<Variable>& variables() const { return vars_; }

  std::optional<std::size_t> index_of(std::string_view name) const;
  std::optional<std::size_t> time_index() const { return time_; }

  /// Indices of every variable of the given class, in space order.
  const std::vector<std::size_t>& indices(VarClass c) const;

  bool operator==(const VarSpace& other) const { return vars_ == other.vars_; }

 private:
  explicit VarSpace(std::vector<Variable> vars);

  std::vector<Variable> vars_;
  std::optional<std::size_t> time_;
  std::vector<std::size_t> state_;
  std::vector<std::size_t> uncertain_;
  std::vector<std::size_t> time_list_;
};

/// True if both pointers refer to structurally equal spaces.
bool same_space(const VarSpacePtr& a, const VarSpacePtr& b);

}  // namespace rcplan::poly

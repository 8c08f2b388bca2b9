#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rcplan/poly/uni_poly.hpp"
#include "rcplan/poly/var_space.hpp"

namespace rcplan::poly {

/// Coefficients with magnitude at or below this are dropped after arithmetic.
inline constexpr double kCanonicalEps = 1e-12;
/// Largest total degree a MultiPoly may reach.
inline constexpr int kMaxTotalDegree = 64;

using Exponent = std::vector<std::uint8_t>;

/// Sparse multivariate polynomial over a VarSpace. Immutable value type
/// apart from term insertion while building.
class MultiPoly {
 public:
  using TermMap = std::map<Exponent, double>;

  explicit MultiPoly(VarSpacePtr space);

  static MultiPoly constant(VarSpacePtr space, double c);
  /// The polynomial consisting of a single variable; throws StructuralError
  /// if the name is unknown.
  static MultiPoly variable(VarSpacePtr space, const std::string& name);

  /// Accumulates c * x^e; the result is canonicalized.
  void add_term(const Exponent& e, double c);

  const VarSpacePtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  int degree(std::size_t var) const;
  int total_degree() const;
  bool uses(std::size_t var) const { return degree(var) > 0; }
  bool uses_class(VarClass c) const;
  double constant_term() const;

  /// values[i] is the value of variable i; size must equal the space arity.
  double evaluate(std::span<const double> values) const;
  /// Throws StructuralError if a used variable is missing from the map.
  double evaluate(const std::map<std::string, double>& values) const;

  MultiPoly pow(unsigned k) const;

  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  MultiPoly& operator*=(double s);

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(MultiPoly a, double s) { return a *= s; }
  friend MultiPoly operator*(double s, MultiPoly a) { return a *= s; }
  friend MultiPoly operator-(MultiPoly a) { return a *= -1.0; }

  /// Human-readable form, e.g. "0.1233 - x1^2 - x2^2".
  std::string to_string() const;

 private:
  void check_space(const MultiPoly& o) const;

  VarSpacePtr space_;
  TermMap terms_;
};

enum class ArithKind { Add, Sub, Mul };

MultiPoly arith(const MultiPoly& a, const MultiPoly& b, ArithKind kind);

/// Replaces every state variable by its curve in the space's time variable.
/// curves[i] belongs to the i-th state variable (space order). The result
/// lives in the same space and involves only uncertain and time variables.
MultiPoly substitute_trajectory(const MultiPoly& p,
                                std::span<const UniPoly> curves);
MultiPoly substitute_trajectory(const MultiPoly& p,
                                const std::map<std::string, UniPoly>& curves);

/// Dense form of a polynomial that only involves the time variable.
UniPoly to_univariate(const MultiPoly& p);

/// substitute_trajectory followed by to_univariate without building the
/// intermediate sparse polynomial. p must not involve uncertain variables.
UniPoly compose_univariate(const MultiPoly& p, std::span<const UniPoly> curves);

}  // namespace rcplan::poly

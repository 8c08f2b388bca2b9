#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "rcplan/poly/uni_poly.hpp"

namespace rcplan::poly {

/// Values within this band of zero count as nonpositive in certificates.
inline constexpr double kSignTolerance = 1e-9;
/// Floor below which a Sturm remainder is treated as zero; larger remainders
/// are also dropped when within the propagated rounding bound.
inline constexpr double kRemainderEps = 1e-12;
/// Residual allowed when checking that a candidate gcd divides the
/// (unit-scaled) polynomial and its derivative.
inline constexpr double kGcdTolerance = 1e-8;

/// Sturm sequence of the square-free part of a polynomial.
class SturmChain {
 public:
  /// Throws StructuralError for the zero polynomial.
  explicit SturmChain(const UniPoly& p);

  /// Number of sign variations of the chain evaluated at x (zeros skipped).
  int variations(double x) const;
  /// Distinct real roots in (a, b].
  int count(double a, double b) const { return variations(a) - variations(b); }

  const std::vector<UniPoly>& sequence() const { return seq_; }

 private:
  std::vector<UniPoly> seq_;
};

/// Number of distinct real roots of p in (a, b].
int sturm_root_count(const UniPoly& p, double a, double b);

/// Distinct real roots of p in [a, b], ascending, refined by bisection.
std::vector<double> isolate_roots(const UniPoly& p, double a, double b);

struct IntervalVerdict {
  enum class Outcome { CertifiedNonpositive, Violated, Degenerate };

  Outcome outcome = Outcome::Degenerate;
  /// Present iff violated.
  std::optional<double> witness;
  /// Smallest slack -p(t) seen at the probed points (negative if violated).
  double margin = 0.0;

  bool certified() const { return outcome == Outcome::CertifiedNonpositive; }
};

std::string_view to_string(IntervalVerdict::Outcome o);

/// Decides whether p(t) <= tol for every t in [a, b].
///
/// The interval is mapped to [0, 1]; when p has no root there and is
/// negative at the left end the verdict is immediate, otherwise p is
/// maximized over the endpoints and the isolated roots of p'. A violated
/// verdict carries the maximizer as witness. Polynomials whose coefficients
/// all fall below kCanonicalEps are reported degenerate.
IntervalVerdict certify_nonpositive(const UniPoly& p, double a, double b,
                                    double tol = kSignTolerance);

}  // namespace rcplan::poly

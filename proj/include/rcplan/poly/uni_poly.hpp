#pragma once

#include <initializer_list>
#include <span>
#include <vector>

namespace rcplan::poly {

/// Dense univariate polynomial c_0 + c_1 t + ... + c_d t^d.
///
/// The leading coefficient is nonzero; the zero polynomial has no stored
/// coefficients and degree -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<double> ascending);
  UniPoly(std::initializer_list<double> ascending)
      : UniPoly(std::vector<double>(ascending)) {}

  static UniPoly constant(double c) { return UniPoly({c}); }
  /// offset + slope * t
  static UniPoly linear(double offset, double slope) {
    return UniPoly({offset, slope});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::span<const double> coeffs() const { return c_; }
  double coeff(int k) const {
    return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0.0;
  }
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  double max_abs_coeff() const;

  double operator()(double t) const;

  UniPoly derivative() const;
  /// Exact definite integral over [a, b].
  double integrate(double a, double b) const;
  /// q(s) = p(offset + scale * s).
  UniPoly compose_affine(double offset, double scale) const;
  UniPoly pow(unsigned k) const;
  /// Drops coefficients with |c| <= rel_eps * max|c|, then trims the degree.
  UniPoly trimmed(double rel_eps) const;

  UniPoly& operator+=(const UniPoly& o);
  UniPoly& operator-=(const UniPoly& o);
  UniPoly& operator*=(double s);

  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(UniPoly a, double s) { return a *= s; }
  friend UniPoly operator*(double s, UniPoly a) { return a *= s; }
  friend UniPoly operator-(UniPoly a) { return a *= -1.0; }

  bool operator==(const UniPoly&) const = default;

 private:
  void trim();

  std::vector<double> c_;
};

struct DivMod {
  UniPoly quotient;
  UniPoly remainder;
};

/// Polynomial long division; throws StructuralError on a zero divisor.
DivMod divmod(const UniPoly& num, const UniPoly& den);

}  // namespace rcplan::poly

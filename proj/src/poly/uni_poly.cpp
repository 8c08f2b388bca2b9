#include "rcplan/poly/uni_poly.hpp"

#include <algorithm>
#include <cmath>

#include "rcplan/error.hpp"

namespace rcplan::poly {

UniPoly::UniPoly(std::vector<double> ascending) : c_(std::move(ascending)) {
  trim();
}

void UniPoly::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double UniPoly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

double UniPoly::operator()(double t) const {
  double acc = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly UniPoly::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<double> d(c_.size() - 1);
  for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return UniPoly(std::move(d));
}

double UniPoly::integrate(double a, double b) const {
  double fa = 0.0, fb = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) {
    const double ck = c_[k] / static_cast<double>(k + 1);
    fa = fa * a + ck;
    fb = fb * b + ck;
  }
  return fb * b - fa * a;
}

UniPoly UniPoly::compose_affine(double offset, double scale) const {
  // Horner in polynomial arithmetic: acc = acc * (offset + scale s) + c_k.
  const UniPoly lin = UniPoly::linear(offset, scale);
  UniPoly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc = acc * lin;
    acc += UniPoly::constant(*it);
  }
  return acc;
}

UniPoly UniPoly::pow(unsigned k) const {
  UniPoly result = UniPoly::constant(1.0);
  UniPoly base = *this;
  while (k > 0) {
    if (k & 1u) result = result * base;
    k >>= 1u;
    if (k > 0) base = base * base;
  }
  return result;
}

UniPoly UniPoly::trimmed(double rel_eps) const {
  const double cut = rel_eps * max_abs_coeff();
  std::vector<double> c = c_;
  for (double& v : c)
    if (std::abs(v) <= cut) v = 0.0;
  return UniPoly(std::move(c));
}

UniPoly& UniPoly::operator+=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

UniPoly& UniPoly::operator*=(double s) {
  for (double& v : c_) v *= s;
  trim();
  return *this;
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> r(a.c_.size() + b.c_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UniPoly(std::move(r));
}

DivMod divmod(const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw StructuralError("polynomial division by zero");
  std::vector<double> rem(num.coeffs().begin(), num.coeffs().end());
  const int dn = den.degree();
  const int nn = num.degree();
  if (nn < dn) return {UniPoly{}, num};
  std::vector<double> quo(static_cast<std::size_t>(nn - dn + 1), 0.0);
  const double lead = den.leading();
  for (int k = nn - dn; k >= 0; --k) {
    const double q = rem[static_cast<std::size_t>(k + dn)] / lead;
    quo[static_cast<std::size_t>(k)] = q;
    for (int j = 0; j <= dn; ++j) rem[static_cast<std::size_t>(k + j)] -= q * den.coeff(j);
    rem[static_cast<std::size_t>(k + dn)] = 0.0;
  }
  rem.resize(static_cast<std::size_t>(dn));
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

}  // namespace rcplan::poly

#include "rcplan/poly/multi_poly.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "rcplan/error.hpp"

namespace rcplan::poly {
namespace {

int exponent_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

double int_pow(double x, int k) {
  double r = 1.0;
  while (k > 0) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  return r;
}

}  // namespace

MultiPoly::MultiPoly(VarSpacePtr space) : space_(std::move(space)) {
  if (!space_) throw StructuralError("MultiPoly requires a variable space");
}

MultiPoly MultiPoly::constant(VarSpacePtr space, double c) {
  MultiPoly p(std::move(space));
  p.add_term(Exponent(p.space_->size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(VarSpacePtr space, const std::string& name) {
  MultiPoly p(std::move(space));
  auto idx = p.space_->index_of(name);
  if (!idx) throw StructuralError("unknown variable '" + name + "'");
  Exponent e(p.space_->size(), 0);
  e[*idx] = 1;
  p.add_term(e, 1.0);
  return p;
}

void MultiPoly::add_term(const Exponent& e, double c) {
  if (e.size() != space_->size())
    throw StructuralError("exponent arity does not match variable space");
  if (exponent_degree(e) > kMaxTotalDegree)
    throw StructuralError("total degree exceeds " + std::to_string(kMaxTotalDegree));
  if (c == 0.0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) <= kCanonicalEps) terms_.erase(it);
}

int MultiPoly::degree(std::size_t var) const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, exponent_degree(e));
  return d;
}

bool MultiPoly::uses_class(VarClass cls) const {
  for (std::size_t i : space_->indices(cls))
    if (uses(i)) return true;
  return false;
}

double MultiPoly::constant_term() const {
  auto it = terms_.find(Exponent(space_->size(), 0));
  return it == terms_.end() ? 0.0 : it->second;
}

double MultiPoly::evaluate(std::span<const double> values) const {
  if (values.size() != space_->size())
    throw StructuralError("assignment arity does not match variable space");
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) m *= int_pow(values[i], e[i]);
    sum += m;
  }
  return sum;
}

double MultiPoly::evaluate(const std::map<std::string, double>& values) const {
  std::vector<double> v(space_->size(), 0.0);
  for (std::size_t i = 0; i < space_->size(); ++i) {
    auto it = values.find((*space_)[i].name);
    if (it != values.end()) {
      v[i] = it->second;
    } else if (uses(i)) {
      throw StructuralError("no value for variable '" + (*space_)[i].name + "'");
    }
  }
  return evaluate(v);
}

MultiPoly MultiPoly::pow(unsigned k) const {
  MultiPoly r = constant(space_, 1.0);
  for (unsigned i = 0; i < k; ++i) r = r * *this;
  return r;
}

void MultiPoly::check_space(const MultiPoly& o) const {
  if (!same_space(space_, o.space_))
    throw StructuralError("polynomials live in different variable spaces");
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  check_space(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  check_space(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MultiPoly& MultiPoly::operator*=(double s) {
  TermMap scaled;
  for (const auto& [e, c] : terms_)
    if (std::abs(c * s) > kCanonicalEps) scaled.emplace(e, c * s);
  terms_ = std::move(scaled);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  a.check_space(b);
  MultiPoly::TermMap acc;
  Exponent e(a.space_->size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      int deg = 0;
      for (std::size_t i = 0; i < e.size(); ++i) {
        const int s = ea[i] + eb[i];
        if (s > kMaxTotalDegree)
          throw StructuralError("total degree exceeds " + std::to_string(kMaxTotalDegree));
        e[i] = static_cast<std::uint8_t>(s);
        deg += s;
      }
      if (deg > kMaxTotalDegree)
        throw StructuralError("total degree exceeds " + std::to_string(kMaxTotalDegree));
      acc[e] += ca * cb;
    }
  }
  MultiPoly r(a.space_);
  for (auto& [k, c] : acc)
    if (std::abs(c) > kCanonicalEps) r.terms_.emplace(k, c);
  return r;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, double>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    const int dx = exponent_degree(x.first), dy = exponent_degree(y.first);
    if (dx != dy) return dx < dy;
    return x.first > y.first;
  });
  std::string out;
  char buf[64];
  bool first = true;
  for (const auto& [e, c] : ordered) {
    const bool is_const = exponent_degree(e) == 0;
    double mag = std::abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (!e[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += (*space_)[i].name;
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (is_const || mag != 1.0) {
      std::snprintf(buf, sizeof buf, "%.6g", mag);
      out += buf;
      if (!is_const) out += "*";
    }
    out += mono;
  }
  return out;
}

MultiPoly arith(const MultiPoly& a, const MultiPoly& b, ArithKind kind) {
  switch (kind) {
    case ArithKind::Add: return a + b;
    case ArithKind::Sub: return a - b;
    case ArithKind::Mul: return a * b;
  }
  return a;
}

namespace {

// powers[k][e] = curves[k]^e for every exponent a state variable reaches in p.
std::vector<std::vector<UniPoly>> curve_powers(const MultiPoly& p,
                                               std::span<const UniPoly> curves) {
  const auto& state = p.space()->indices(VarClass::State);
  std::vector<std::vector<UniPoly>> powers(state.size());
  for (std::size_t k = 0; k < state.size(); ++k) {
    const int d = p.degree(state[k]);
    powers[k].reserve(static_cast<std::size_t>(d) + 1);
    powers[k].push_back(UniPoly::constant(1.0));
    for (int e = 1; e <= d; ++e) powers[k].push_back(powers[k].back() * curves[k]);
  }
  return powers;
}

void check_curves(const MultiPoly& p, std::span<const UniPoly> curves) {
  const auto& space = *p.space();
  const auto& state = space.indices(VarClass::State);
  if (curves.size() != state.size())
    throw StructuralError("expected " + std::to_string(state.size()) +
                          " state curves, got " + std::to_string(curves.size()));
  if (p.uses_class(VarClass::State) && !space.time_index())
    throw StructuralError("substituting curves requires a time variable in the space");
}

}  // namespace

MultiPoly substitute_trajectory(const MultiPoly& p, std::span<const UniPoly> curves) {
  check_curves(p, curves);
  if (!p.uses_class(VarClass::State)) return p;
  const auto& state = p.space()->indices(VarClass::State);
  const std::size_t ti = *p.space()->time_index();
  const auto powers = curve_powers(p, curves);

  MultiPoly out(p.space());
  for (const auto& [e, c] : p.terms()) {
    UniPoly u = UniPoly::constant(c);
    Exponent base = e;
    for (std::size_t k = 0; k < state.size(); ++k) {
      if (e[state[k]]) u = u * powers[k][e[state[k]]];
      base[state[k]] = 0;
    }
    const int te = base[ti];
    for (int j = 0; j <= u.degree(); ++j) {
      if (u.coeff(j) == 0.0) continue;
      base[ti] = static_cast<std::uint8_t>(te + j);
      out.add_term(base, u.coeff(j));
    }
  }
  return out;
}

MultiPoly substitute_trajectory(const MultiPoly& p,
                                const std::map<std::string, UniPoly>& curves) {
  const auto& space = *p.space();
  std::vector<UniPoly> ordered;
  for (std::size_t i : space.indices(VarClass::State)) {
    auto it = curves.find(space[i].name);
    if (it != curves.end()) {
      ordered.push_back(it->second);
    } else if (p.uses(i)) {
      throw StructuralError("no curve for state variable '" + space[i].name + "'");
    } else {
      ordered.emplace_back();
    }
  }
  return substitute_trajectory(p, ordered);
}

UniPoly to_univariate(const MultiPoly& p) {
  const auto& space = *p.space();
  const auto ti = space.time_index();
  for (std::size_t i = 0; i < space.size(); ++i)
    if ((!ti || i != *ti) && p.uses(i))
      throw StructuralError("variable '" + space[i].name +
                            "' remains; polynomial is not univariate in time");
  std::vector<double> c(static_cast<std::size_t>(ti ? p.degree(*ti) : 0) + 1, 0.0);
  for (const auto& [e, v] : p.terms()) c[ti ? e[*ti] : 0] += v;
  return UniPoly(std::move(c));
}

UniPoly compose_univariate(const MultiPoly& p, std::span<const UniPoly> curves) {
  check_curves(p, curves);
  if (p.uses_class(VarClass::Uncertain))
    throw StructuralError("compose_univariate: polynomial still involves uncertain variables");
  const auto& state = p.space()->indices(VarClass::State);
  const auto ti = p.space()->time_index();
  const auto powers = curve_powers(p, curves);

  std::vector<double> acc;
  for (const auto& [e, c] : p.terms()) {
    UniPoly u = UniPoly::constant(c);
    for (std::size_t k = 0; k < state.size(); ++k)
      if (e[state[k]]) u = u * powers[k][e[state[k]]];
    const std::size_t te = ti ? e[*ti] : 0;
    const std::size_t need = te + static_cast<std::size_t>(u.degree()) + 1;
    if (acc.size() < need) acc.resize(need, 0.0);
    for (int j = 0; j <= u.degree(); ++j) acc[te + static_cast<std::size_t>(j)] += u.coeff(j);
  }
  for (double& v : acc)
    if (std::abs(v) <= kCanonicalEps) v = 0.0;
  return UniPoly(std::move(acc));
}

}  // namespace rcplan::poly

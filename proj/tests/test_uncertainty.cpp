#include <doctest.h>

#include <cmath>

#include "rcplan/error.hpp"
#include "rcplan/poly/multi_poly.hpp"
#include "rcplan/uncertainty/distribution.hpp"
#include "rcplan/uncertainty/expectation.hpp"

using namespace rcplan;
using namespace rcplan::uncertainty;

namespace {

// Independent oracles: midpoint-rule integration for the uniform, the
// binomial expansion with E[Z^j] = (j-1)!! for the normal, and the Beta
// function ratio B(a + k, b) / B(a, b) for the beta.
double uniform_oracle(double l, double u, int k) {
  const int n = 200000;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += std::pow(l + (u - l) * (i + 0.5) / n, k);
  return s / n;
}

double normal_oracle(double mu, double var, int k) {
  double s = 0.0;
  const double sigma = std::sqrt(var);
  for (int j = 0; j <= k; j += 2) {
    double dfact = 1.0;
    for (int i = j - 1; i > 0; i -= 2) dfact *= i;
    const double binom = std::tgamma(k + 1.0) / (std::tgamma(j + 1.0) * std::tgamma(k - j + 1.0));
    s += binom * std::pow(mu, k - j) * std::pow(sigma, j) * dfact;
  }
  return s;
}

double beta_oracle(double a, double b, int k) {
  return std::exp(std::lgamma(a + k) + std::lgamma(a + b) - std::lgamma(a) - std::lgamma(a + b + k));
}

}  // namespace

TEST_CASE("uniform moments: closed form for the radius distribution") {
  const auto d = Distribution::uniform(0.3, 0.4);
  // (u^3 - l^3) / (3 (u - l)) and (u^5 - l^5) / (5 (u - l))
  CHECK(moment(d, 2) == doctest::Approx(0.1233333333).epsilon(1e-9));
  CHECK(moment(d, 4) == doctest::Approx(0.01562).epsilon(1e-9));
  for (int k = 0; k <= 10; ++k) CHECK(moment(d, k) == doctest::Approx(uniform_oracle(0.3, 0.4, k)).epsilon(1e-8));
  CHECK(moment(Distribution::uniform(-0.1, 0.1), 1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(Distribution::uniform(1.0, 1.0), InputError);
}

TEST_CASE("normal moments follow the mean/variance recursion") {
  for (auto [mu, var] : {std::pair{0.1, 0.001}, {0.0, 0.01}, {-1.5, 2.0}}) {
    const auto d = Distribution::normal(mu, var);
    for (int k = 0; k <= 10; ++k)
      CHECK(moment(d, k) == doctest::Approx(normal_oracle(mu, var, k)).epsilon(1e-10));
  }
  // Variance, not standard deviation.
  CHECK(moment(Distribution::normal(0.0, 0.1), 2) == doctest::Approx(0.1));
  CHECK_THROWS_AS(Distribution::normal(0.0, -1.0), InputError);
}

TEST_CASE("beta moments: ratio recursion against the Beta function") {
  for (auto [a, b] : {std::pair{3.0, 3.0}, {9.0, 0.5}, {0.5, 0.5}}) {
    const auto d = Distribution::beta(a, b);
    for (int k = 0; k <= 12; ++k) CHECK(moment(d, k) == doctest::Approx(beta_oracle(a, b, k)).epsilon(1e-10));
  }
  CHECK(moment(Distribution::beta(3, 3), 1) == doctest::Approx(0.5));
  CHECK_THROWS_AS(Distribution::beta(0.0, 1.0), InputError);
}

TEST_CASE("moment tables: validation and order limit") {
  const auto d = Distribution::moment_table({1.0, 0.0, 1.0, 0.0, 3.0});  // standard normal up to 4
  CHECK(d.max_order() == 4);
  CHECK(moment(d, 4) == doctest::Approx(3.0));
  CHECK_THROWS_AS(moment(d, 5), InputError);
  CHECK_THROWS_AS(Distribution::moment_table({2.0, 0.0, 1.0}), InputError);  // m0 != 1
  CHECK_THROWS_AS(Distribution::moment_table({1.0, 0.0, -1.0}), InputError);  // negative variance
  CHECK(Distribution::normal(0, 1).max_order() == -1);
  const auto all = moments(Distribution::uniform(0.3, 0.4), 4);
  REQUIRE(all.size() == 5);
  CHECK(all[0] == doctest::Approx(1.0));
}

TEST_CASE("expectation integrates out modeled variables only") {
  const auto s = poly::VarSpace::make({{"x", poly::VarClass::State},
                                       {"a", poly::VarClass::Uncertain},
                                       {"b", poly::VarClass::Uncertain},
                                       {"t", poly::VarClass::Time}});
  using poly::MultiPoly;
  const auto x = MultiPoly::variable(s, "x"), a = MultiPoly::variable(s, "a");
  const auto b = MultiPoly::variable(s, "b"), t = MultiPoly::variable(s, "t");
  const OmegaModel model{{"a", Distribution::normal(1.0, 0.5)}, {"b", Distribution::uniform(0.0, 2.0)}};
  // E[a^2 b x + b t] = 1.5 * 1 * x + 1 * t
  const auto e = expectation(a * a * b * x + b * t, model);
  CHECK_FALSE(e.uses_class(poly::VarClass::Uncertain));
  CHECK(e.evaluate(std::map<std::string, double>{{"x", 2.0}, {"t", 3.0}}) == doctest::Approx(6.0));
  // Uncovered uncertain variable.
  CHECK_THROWS_AS(expectation(a * b, OmegaModel{{"a", Distribution::normal(0, 1)}}), StructuralError);
  // Time may be integrated as a uniform variable.
  OmegaModel with_t = model;
  with_t.insert_or_assign("t", Distribution::uniform(0.0, 1.0));
  CHECK(expectation(t * t, with_t).constant_term() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("property: expectation is linear") {
  const auto s = poly::VarSpace::make({{"x", poly::VarClass::State}, {"w", poly::VarClass::Uncertain}});
  using poly::MultiPoly;
  const auto x = MultiPoly::variable(s, "x"), w = MultiPoly::variable(s, "w");
  const OmegaModel m{{"w", Distribution::beta(2, 5)}};
  const auto p = w.pow(3) * x - 2.0 * w * x * x, q = w * w + x.pow(2) * w;
  const auto lhs = expectation(3.0 * p + q, m), rhs = 3.0 * expectation(p, m) + expectation(q, m);
  for (double xv : {-1.0, 0.3, 2.0}) {
    const std::map<std::string, double> at{{"x", xv}};
    CHECK(lhs.evaluate(at) == doctest::Approx(rhs.evaluate(at)));
  }
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "rcplan/error.hpp"
#include "rcplan/poly/multi_poly.hpp"
#include "rcplan/poly/sturm.hpp"
#include "rcplan/poly/uni_poly.hpp"
#include "rcplan/poly/var_space.hpp"

using namespace rcplan;
using namespace rcplan::poly;

namespace {

UniPoly from_roots(const std::vector<double>& roots, double scale = 1.0) {
  UniPoly p = UniPoly::constant(scale);
  for (double r : roots) p = p * UniPoly::linear(-r, 1.0);
  return p;
}

VarSpacePtr xyt() {
  return VarSpace::make({{"x1", VarClass::State}, {"x2", VarClass::State}, {"w", VarClass::Uncertain},
                         {"t", VarClass::Time}});
}

double dense_max(const UniPoly& p, double a, double b, int n = 100000) {
  double m = -INFINITY;
  for (int i = 0; i <= n; ++i) m = std::max(m, p(a + (b - a) * i / n));
  return m;
}

}  // namespace

TEST_CASE("VarSpace rejects duplicates and a second time variable") {
  CHECK_THROWS_AS(VarSpace::make({{"x", VarClass::State}, {"x", VarClass::Uncertain}}), StructuralError);
  CHECK_THROWS_AS(VarSpace::make({{"t", VarClass::Time}, {"s", VarClass::Time}}), StructuralError);
  const auto s = xyt();
  CHECK(s->index_of("w") == 2u);
  CHECK(s->time_index() == 3u);
  CHECK(s->indices(VarClass::State) == std::vector<std::size_t>{0, 1});
  CHECK_FALSE(s->index_of("q").has_value());
}

TEST_CASE("UniPoly arithmetic, calculus and composition") {
  const UniPoly p{1.0, -3.0, 2.0};  // (1 - t)(1 - 2t)
  CHECK(p.degree() == 2);
  CHECK(p(0.5) == doctest::Approx(0.0));
  CHECK(p.derivative() == UniPoly({-3.0, 4.0}));
  // integral_0^1 1 - 3t + 2t^2 = 1 - 3/2 + 2/3
  CHECK(p.integrate(0.0, 1.0) == doctest::Approx(1.0 / 6.0));
  const UniPoly q = p.compose_affine(2.0, 3.0);
  for (double s : {-1.0, 0.0, 0.3, 2.0}) CHECK(q(s) == doctest::Approx(p(2.0 + 3.0 * s)));
  CHECK((p - p).is_zero());
  CHECK((p - p).degree() == -1);
  CHECK(p.pow(3)(0.7) == doctest::Approx(std::pow(p(0.7), 3)));
  const auto dm = divmod(p * UniPoly{2.0, 1.0} + UniPoly{0.5}, UniPoly{2.0, 1.0});
  CHECK(dm.quotient == p);
  CHECK(dm.remainder(0.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(divmod(p, UniPoly{}), StructuralError);
}

TEST_CASE("property: UniPoly product and sum agree with pointwise evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> a(1 + trial % 7), b(1 + (trial / 7) % 5);
    for (auto& v : a) v = c(rng);
    for (auto& v : b) v = c(rng);
    const UniPoly pa(a), pb(b);
    const double t = 2.0 * c(rng);
    CHECK((pa * pb)(t) == doctest::Approx(pa(t) * pb(t)).epsilon(1e-12));
    CHECK((pa + pb)(t) == doctest::Approx(pa(t) + pb(t)).epsilon(1e-12));
  }
}

TEST_CASE("MultiPoly evaluation, canonicalization and degree cap") {
  const auto s = xyt();
  const auto x1 = MultiPoly::variable(s, "x1"), x2 = MultiPoly::variable(s, "x2");
  const auto p = x1 * x1 - 2.0 * x1 * x2 + MultiPoly::constant(s, 3.0);
  CHECK(p.term_count() == 3);
  CHECK(p.evaluate(std::map<std::string, double>{{"x1", 2.0}, {"x2", 1.0}}) == doctest::Approx(3.0));
  CHECK_THROWS_AS(p.evaluate(std::map<std::string, double>{{"x1", 2.0}}), StructuralError);
  CHECK((p - p).is_zero());
  // Coefficients within 1e-12 of zero vanish.
  MultiPoly tiny(s);
  tiny.add_term(Exponent{1, 0, 0, 0}, 5e-13);
  CHECK(tiny.is_zero());
  CHECK_THROWS_AS(x1.pow(65), StructuralError);
  CHECK(x1.pow(64).total_degree() == 64);
  const auto other = VarSpace::make({{"x1", VarClass::State}});
  CHECK_THROWS_AS(x1 + MultiPoly::variable(other, "x1"), StructuralError);
  CHECK(arith(x1, x2, ArithKind::Mul).terms() == (x1 * x2).terms());
}

TEST_CASE("property: substitute_trajectory commutes with evaluation") {
  const auto s = xyt();
  const auto x1 = MultiPoly::variable(s, "x1"), x2 = MultiPoly::variable(s, "x2");
  const auto w = MultiPoly::variable(s, "w"), t = MultiPoly::variable(s, "t");
  const auto p = w * w - x1 * x1 * x2 + 3.0 * x2 * t - t * t * x1 + MultiPoly::constant(s, 0.25);
  const std::vector<UniPoly> curves{{-1.0, 2.0, 0.5}, {0.3, -1.0}};
  const auto sub = substitute_trajectory(p, curves);
  CHECK_FALSE(sub.uses_class(VarClass::State));
  for (double tv : {0.0, 0.2, 0.9}) {
    for (double wv : {0.3, -0.7}) {
      const double direct = p.evaluate(std::map<std::string, double>{
          {"x1", curves[0](tv)}, {"x2", curves[1](tv)}, {"w", wv}, {"t", tv}});
      CHECK(sub.evaluate(std::map<std::string, double>{{"w", wv}, {"t", tv}}) == doctest::Approx(direct));
    }
  }
  CHECK_THROWS_AS(to_univariate(sub), StructuralError);  // still uses w
  CHECK_THROWS_AS(compose_univariate(p, curves), StructuralError);
  const auto q = p - w * w;
  const UniPoly fused = compose_univariate(q, curves);
  const UniPoly slow = to_univariate(substitute_trajectory(q, curves));
  for (double tv : {-0.5, 0.1, 0.77}) CHECK(fused(tv) == doctest::Approx(slow(tv)));
}

TEST_CASE("Sturm counts distinct roots in half-open intervals") {
  const UniPoly p = from_roots({-0.5, 0.25, 0.25, 1.0});  // double root at 0.25
  CHECK(sturm_root_count(p, -1.0, 2.0) == 3);
  CHECK(sturm_root_count(p, -0.5, 1.0) == 2);  // (a, b]: -0.5 excluded, 1.0 included
  CHECK(sturm_root_count(p, 0.3, 0.9) == 0);
  CHECK(sturm_root_count(UniPoly{1.0, 0.0, 1.0}, -10.0, 10.0) == 0);
  CHECK_THROWS_AS(SturmChain(UniPoly{}), StructuralError);
  const auto roots = isolate_roots(p, -1.0, 2.0);
  REQUIRE(roots.size() == 3);
  CHECK(roots[0] == doctest::Approx(-0.5).epsilon(1e-9));
  CHECK(roots[1] == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(roots[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("property: Sturm count matches planted distinct roots") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<double> roots(1 + trial % 6);
    for (auto& r : roots) r = std::round(u(rng) * 1000.0) / 1000.0;
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    auto with_mult = roots;
    if (trial % 3 == 0) with_mult.push_back(roots.front());  // a repeated root
    const UniPoly p = from_roots(with_mult, 1.0 + u(rng) * 0.5);
    const double a = u(rng) - 0.0005, b = a + 1.0 + 0.37 * (trial % 300) / 300.0;
    const auto expected = std::count_if(roots.begin(), roots.end(), [&](double r) { return r > a && r <= b; });
    CHECK(sturm_root_count(p, a, b) == expected);
    CHECK(isolate_roots(p, a, b).size() == static_cast<std::size_t>(expected));
  }
}

TEST_CASE("certify_nonpositive: verdicts and witnesses") {
  using O = IntervalVerdict::Outcome;
  // -(t - 0.5)^2 - 0.1 < 0 everywhere
  CHECK(certify_nonpositive(UniPoly{-0.35, 1.0, -1.0}, 0.0, 1.0).certified());
  // 0.1 - (t - 0.5)^2 peaks at 0.5
  const auto v = certify_nonpositive(UniPoly{-0.15, 1.0, -1.0}, 0.0, 1.0);
  CHECK(v.outcome == O::Violated);
  REQUIRE(v.witness);
  CHECK(*v.witness == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(v.margin < 0.0);
  // Same polynomial on an interval that misses the bump.
  CHECK(certify_nonpositive(UniPoly{-0.15, 1.0, -1.0}, 1.0, 3.0).certified());
  // Touching zero from below is within tolerance.
  CHECK(certify_nonpositive(UniPoly{-0.25, 1.0, -1.0}, 0.0, 1.0).certified());
  CHECK(certify_nonpositive(UniPoly{}, 0.0, 1.0).outcome == O::Degenerate);
  CHECK(certify_nonpositive(UniPoly{1e-13, -1e-13}, 0.0, 1.0).outcome == O::Degenerate);
  // Endpoint violation.
  const auto e = certify_nonpositive(UniPoly{-1.0, 2.0}, 0.0, 1.0);
  CHECK(e.outcome == O::Violated);
  CHECK(*e.witness == doctest::Approx(1.0));
}

TEST_CASE("property: certificate agrees with a dense grid outside the tolerance band") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int decided = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    std::vector<double> c(1 + trial % 9);
    for (auto& v : c) v = u(rng);
    const UniPoly p(c);
    const double a = 2.0 * u(rng), b = a + 0.1 + std::abs(u(rng));
    const double m = dense_max(p, a, b, 20000);
    if (std::abs(m) <= 1e-6) continue;
    ++decided;
    const auto v = certify_nonpositive(p, a, b);
    CHECK(v.certified() == (m < 0.0));
    if (!v.certified()) CHECK(p(*v.witness) > 0.0);
  }
  CHECK(decided > 250);
}

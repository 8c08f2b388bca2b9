#include <doctest.h>

#include <cmath>

#include "rcplan/error.hpp"
#include "rcplan/risk/contour.hpp"
#include "rcplan/risk/raster.hpp"
#include "support.hpp"

using namespace rcplan;
using namespace rcplan::risk;

namespace {

double coeff(const poly::MultiPoly& p, poly::Exponent e) {
  const auto it = p.terms().find(e);
  return it == p.terms().end() ? 0.0 : it->second;
}

}  // namespace

TEST_CASE("Example-1 contour polynomials match the printed expansion") {
  const auto c = build_contour(testing::example1_disc(), 0.1);
  // E[P] = 0.1233 - x1^2 - x2^2
  CHECK(coeff(c.ep(), {0, 0, 0, 0}) == doctest::Approx(0.1233).epsilon(1e-3));
  CHECK(coeff(c.ep(), {2, 0, 0, 0}) == doctest::Approx(-1.0));
  CHECK(coeff(c.ep(), {0, 2, 0, 0}) == doctest::Approx(-1.0));
  CHECK(c.ep().term_count() == 3);
  // E[P^2] = 0.0156 - 0.2466 x1^2 - 0.2466 x2^2 + x1^4 + 2 x1^2 x2^2 + x2^4
  CHECK(std::abs(coeff(c.ep2(), {0, 0, 0, 0}) - 0.0156) < 1e-3);
  CHECK(std::abs(coeff(c.ep2(), {2, 0, 0, 0}) + 0.2466) < 1e-3);
  CHECK(std::abs(coeff(c.ep2(), {0, 2, 0, 0}) + 0.2466) < 1e-3);
  CHECK(coeff(c.ep2(), {4, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(coeff(c.ep2(), {2, 2, 0, 0}) == doctest::Approx(2.0));
  CHECK(coeff(c.ep2(), {0, 4, 0, 0}) == doctest::Approx(1.0));
  CHECK(c.ep2().term_count() == 6);
  CHECK_FALSE(c.dynamic());
}

TEST_CASE("risk_bound_at: Cantelli value and verdict order") {
  const auto c = build_contour(testing::example1_disc(), 0.1);
  const double m2 = (std::pow(0.4, 3) - std::pow(0.3, 3)) / 0.3;
  const double m4 = (std::pow(0.4, 5) - std::pow(0.3, 5)) / 0.5;

  const std::vector<double> far{1.0, 1.0};
  const auto ev = risk_bound_at(c, far);
  const double ep = m2 - 2.0, ep2 = m4 - 2.0 * m2 * 2.0 + 4.0;
  CHECK(ev.ep == doctest::Approx(ep));
  CHECK(ev.ep2 == doctest::Approx(ep2));
  REQUIRE(ev.bound);
  CHECK(*ev.bound == doctest::Approx((ep2 - ep * ep) / ep2).epsilon(1e-6));
  CHECK(*ev.bound == doctest::Approx(1.166e-4).epsilon(1e-2));
  CHECK(ev.verdict == Membership::Member);

  const std::vector<double> origin{0.0, 0.0};
  CHECK(risk_bound_at(c, origin).verdict == Membership::ExcludedBySign);
  // Radius 0.42: E[P] < 0 but the bound is still above 0.1.
  const std::vector<double> near{0.42, 0.0};
  const auto en = risk_bound_at(c, near);
  CHECK(en.ep < 0.0);
  CHECK(*en.bound > 0.1);
  CHECK(en.verdict == Membership::ExcludedByBound);
  // Radius 0.45 is inside the 0.1 contour.
  const std::vector<double> out{0.45, 0.0};
  CHECK(risk_bound_at(c, out).member());
}

TEST_CASE("contour parameters are validated") {
  CHECK_THROWS_AS(build_contour(testing::example1_disc(), -0.1), InputError);
  CHECK_THROWS_AS(build_contour(testing::example1_disc(), 1.1), InputError);
  const auto c = build_contour(testing::example1_disc(), 0.1);
  const std::vector<double> bad{0.0};
  CHECK_THROWS(risk_bound_at(c, bad));
}

TEST_CASE("property: delta = 1 membership is exactly E[P] <= 0 (away from degeneracy)") {
  const auto c = build_contour(testing::example1_disc(), 1.0);
  for (int i = 0; i <= 40; ++i) {
    for (int j = 0; j <= 40; ++j) {
      const std::vector<double> x{-1.0 + i / 20.0, -1.0 + j / 20.0};
      const auto ev = risk_bound_at(c, x);
      if (ev.verdict == Membership::Degenerate) continue;
      CHECK(ev.member() == (ev.ep <= 0.0));
    }
  }
}

TEST_CASE("property: contours are nested in delta") {
  const auto o = testing::example1_disc();
  const std::vector<double> deltas{0.05, 0.07, 0.1, 0.2};
  const auto grid = GridSpec::uniform({-1, -1}, {1, 1}, 51);
  std::vector<Raster> rs;
  for (double d : deltas) rs.push_back(rasterize(build_contour(o, d), grid));
  for (std::size_t k = 0; k + 1 < rs.size(); ++k) {
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (rs[k].cells[i].member()) CHECK(rs[k + 1].cells[i].member());
    CHECK(rs[k].member_count() < rs[k + 1].member_count());
  }
}

TEST_CASE("dynamic contours need a time; static ones ignore it") {
  const auto sc = testing::load_fixture("example2.scn");
  REQUIRE(sc.contours.size() == 1);
  const auto& c = sc.contours.front();
  CHECK(c.dynamic());
  const std::vector<double> x{0.5, 0.5};
  CHECK_THROWS_AS(risk_bound_at(c, x), StructuralError);
  // Mean centre: (1.75, 0.8) at t = 0.5 and (2, -0.95) at t = 0.
  CHECK(risk_bound_at(c, x, 0.5).member());
  const std::vector<double> centre0{2.0, -0.95};
  CHECK(risk_bound_at(c, centre0, 0.0).verdict == Membership::ExcludedBySign);
  CHECK(risk_bound_at(c, centre0, 1.0).member());

  const auto stat = build_contour(testing::example1_disc(), 0.1);
  const std::vector<double> y{0.9, 0.0};
  CHECK(risk_bound_at(stat, y, 123.0).bound == risk_bound_at(stat, y).bound);
}

TEST_CASE("rasterize matches the serial reference cell for cell") {
  const auto c = build_contour(testing::example1_disc(), 0.1);
  const auto grid = GridSpec::uniform({-1, -1}, {1, 1}, 64);
  const auto a = rasterize(c, grid), b = rasterize_serial(c, grid);
  REQUIRE(a.cells.size() == b.cells.size());
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    CHECK(a.cells[i].x == b.cells[i].x);
    CHECK(a.cells[i].ep == b.cells[i].ep);
    CHECK(a.cells[i].ep2 == b.cells[i].ep2);
    CHECK(a.cells[i].verdict == b.cells[i].verdict);
  }
  CHECK(grid.point(0) == std::vector<double>{-1, -1});
  CHECK(grid.point(1) == std::vector<double>{-1, -1 + 2.0 / 63});  // last axis fastest
}

TEST_CASE("constraint curves equal the contour polynomials along the segment") {
  const auto c = build_contour(testing::example1_disc(), 0.1);
  const std::vector<poly::UniPoly> seg{{-1.0, 2.0}, {-1.0, 2.0}};
  const auto g = constraint_curves(c, seg, 0.0, 1.0);
  for (double t : {0.0, 0.25, 0.5, 0.8}) {
    const std::vector<double> x{seg[0](t), seg[1](t)};
    const auto ev = risk_bound_at(c, x);
    CHECK(g.sign(t) == doctest::Approx(ev.ep));
    CHECK(g.psd(t) == doctest::Approx(kEpsPsd - ev.ep2));
    CHECK(g.risk(t) == doctest::Approx(0.9 * ev.ep2 - ev.ep * ev.ep));
  }
}

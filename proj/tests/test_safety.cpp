#include <doctest.h>

#include <cmath>
#include <random>

#include "rcplan/error.hpp"
#include "rcplan/safety/trajectory.hpp"
#include "rcplan/safety/verify.hpp"
#include "support.hpp"

using namespace rcplan;
using namespace rcplan::safety;

namespace {

std::vector<risk::RiskContour> example1_contours(double delta = 0.1) {
  return {risk::build_contour(testing::example1_disc(), delta)};
}

}  // namespace

TEST_CASE("linear segments and trajectory structure") {
  const std::vector<double> p{0.0, 1.0}, q{2.0, -1.0};
  const auto s = Segment::linear(p, q, 1.0, 3.0);
  CHECK(s.start() == std::vector<double>{0.0, 1.0});
  CHECK(s.end()[0] == doctest::Approx(2.0));
  CHECK(s.position(2.0)[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(Segment({poly::UniPoly{1.0}}, 1.0, 1.0), StructuralError);
  CHECK_THROWS_AS(Segment({}, 0.0, 1.0), StructuralError);

  const auto traj = Trajectory::piecewise_linear({{0, 0}, {1, 0}, {1, 2}}, {0.0, 0.5, 1.0});
  CHECK(traj.segments().size() == 2);
  CHECK(traj.position(0.75)[1] == doctest::Approx(1.0));
  CHECK(traj.waypoints().back() == std::vector<double>{1, 2});
  CHECK(traj.junction_times() == std::vector<double>{0.0, 0.5, 1.0});

  // Time gap and position jump.
  CHECK_THROWS_AS(Trajectory({Segment::linear(p, q, 0, 1), Segment::linear(q, p, 1.5, 2)}), StructuralError);
  CHECK_THROWS_AS(Trajectory({Segment::linear(p, q, 0, 1), Segment::linear(p, q, 1, 2)}), StructuralError);
  CHECK_THROWS_AS(Trajectory(std::vector<Segment>{}), StructuralError);
}

TEST_CASE("arc-length timing is proportional to piece lengths") {
  const auto t = arc_length_times({{0, 0}, {3, 0}, {3, 1}}, 0.0, 2.0);
  REQUIRE(t.size() == 3);
  CHECK(t[1] == doctest::Approx(1.5));
  CHECK(t[2] == 2.0);
  const auto u = arc_length_times({{1, 1}, {1, 1}}, 0.0, 1.0);
  CHECK(u == std::vector<double>{0.0, 1.0});
}

TEST_CASE("straight line through the Example-1 disc is violated with a witness") {
  const auto contours = example1_contours();
  const auto traj = Trajectory::piecewise_linear({{-1, -1}, {1, 1}}, {0.0, 1.0});
  const auto r = verify_trajectory(contours, traj);
  CHECK_FALSE(r.safe);
  REQUIRE(r.first_violation);
  CHECK(r.first_violation->obstacle == "disc");
  REQUIRE(r.first_violation->witness);
  // Sign oracle: E[P](x(t)) = E[w^2] - 2 (2t - 1)^2 is positive exactly on
  // |2t - 1| < sqrt(E[w^2] / 2).
  const double m2 = (std::pow(0.4, 3) - std::pow(0.3, 3)) / 0.3;
  const double half = std::sqrt(m2 / 2.0) / 2.0;
  bool sign_checked = false;
  for (const auto& c : r.checks) {
    if (c.curve != CurveKind::Sign) continue;
    sign_checked = true;
    REQUIRE(c.verdict.witness);
    CHECK(std::abs(*c.verdict.witness - 0.5) < half);
  }
  CHECK(sign_checked);
  // The witness of the first violation is a point of real failure.
  const auto x = traj.position(*r.first_violation->witness);
  CHECK_FALSE(risk::risk_bound_at(contours[0], x).member());
}

TEST_CASE("a detour around the disc verifies safe") {
  const auto contours = example1_contours();
  const auto traj = Trajectory::piecewise_linear({{-1, -1}, {1, -1}, {1, 1}}, {0.0, 0.5, 1.0});
  const auto r = verify_trajectory(contours, traj);
  CHECK(r.safe);
  CHECK(r.checks.size() == 2 * 1 * 3);
  CHECK_FALSE(r.first_violation);
  CHECK(verify_trajectory(std::vector<risk::RiskContour>{}, traj).safe);
  const auto text = to_text(r);
  CHECK(text.rfind("# rcplan safety report format_version=1\n", 0) == 0);
  CHECK(text.find("overall=safe") != std::string::npos);
}

TEST_CASE("property: certified segments are pointwise members, pointwise failures are caught") {
  const auto contours = example1_contours();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int safe_count = 0, unsafe_count = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<double> p{u(rng), u(rng)}, q{u(rng), u(rng)};
    const auto seg = Segment::linear(p, q, 0.0, 1.0);
    const bool safe = segment_is_safe(contours, seg);
    CHECK(safe == verify_segment(contours, seg).safe);
    bool pointwise = true;
    for (int i = 0; i <= 400; ++i) {
      const auto ev = risk::risk_bound_at(contours[0], seg.position(i / 400.0));
      // Only count clear failures (outside the certificate tolerance band).
      const double slack = 0.9 * ev.ep2 - ev.ep * ev.ep;
      if (ev.ep > 1e-6 || slack > 1e-6) pointwise = false;
    }
    if (safe) {
      ++safe_count;
      CHECK(pointwise);
    } else {
      ++unsafe_count;
    }
    if (!pointwise) CHECK_FALSE(safe);
  }
  CHECK(safe_count > 20);
  CHECK(unsafe_count > 20);
}

TEST_CASE("parallel verification matches the serial reference") {
  const auto sc = testing::load_fixture("delivery.scn");
  const auto traj = Trajectory::piecewise_linear({{0, 0}, {0.9, 1.2}, {0.2, 2.6}, {-0.5, 3.3}, {0, 4}},
                                                 {0.0, 0.25, 0.5, 0.75, 1.0});
  const auto a = verify_trajectory(sc.contours, traj), b = verify_trajectory_serial(sc.contours, traj);
  CHECK(a.safe == b.safe);
  CHECK(to_text(a) == to_text(b));
}

TEST_CASE("moving obstacles are checked over each segment's own interval") {
  const auto sc = testing::load_fixture("example2.scn");
  // Parked at the obstacle's mean start position: bad early, fine late.
  const std::vector<double> p{2.0, -0.95};
  const auto early = Segment::linear(p, p, 0.0, 0.1);
  const auto late = Segment::linear(p, p, 0.8, 1.0);
  CHECK_FALSE(segment_is_safe(sc.contours, early));
  CHECK(segment_is_safe(sc.contours, late));
}

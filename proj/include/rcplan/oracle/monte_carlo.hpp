#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcplan/risk/contour.hpp"
#include "rcplan/risk/obstacle.hpp"
#include "rcplan/risk/raster.hpp"
#include "rcplan/safety/trajectory.hpp"

namespace rcplan::oracle {

struct McConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 1;
  std::uint64_t stream = 0;

  /// Throws InputError if samples < 100.
  void validate() const;
};

struct McEstimate {
  double p_hat = 0.0;
  /// sqrt(p_hat (1 - p_hat) / n)
  double stderr_ = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  /// p_hat <= level + sigmas * stderr
  bool within(double level, double sigmas = 3.0) const { return p_hat <= level + sigmas * stderr_; }
};

McEstimate make_estimate(std::size_t hits, std::size_t n, std::uint64_t seed);

/// Draws one bank of uncertain-parameter samples for an obstacle and
/// estimates Prob(P(x, w[, t]) >= 0) at any number of points against it.
///
/// The bank stores the value of every w-monomial of P per sample, so a
/// point costs one small dense product per sample. Every point sees the
/// same draws; estimates at different points are correlated but each one
/// is an ordinary unbiased estimate from cfg.samples draws of (seed, stream).
class RiskSampler {
 public:
  RiskSampler(const risk::UncertainObstacle& obstacle, const McConfig& cfg);

  McEstimate at(std::span<const double> x, std::optional<double> t = std::nullopt) const;

  std::size_t samples() const { return n_; }
  std::size_t monomials() const { return patterns_; }

 private:
  struct Term {
    std::size_t pattern;
    double coeff;
    std::vector<std::pair<std::size_t, int>> powers;  // (space index, exponent)
  };

  const risk::UncertainObstacle* obstacle_;
  std::uint64_t seed_;
  std::size_t n_;
  std::size_t patterns_ = 0;
  std::vector<Term> terms_;
  std::vector<double> values_;  // values_[s * patterns_ + k]
};

/// Prob(P(x, w[, t]) >= 0) from cfg.samples seeded draws.
McEstimate mc_point_risk(const risk::UncertainObstacle& o, std::span<const double> x,
                         std::optional<double> t, const McConfig& cfg);

struct Probe {
  std::vector<double> x;
  std::optional<double> t;
};

/// Estimates at many probes (OpenMP over probes); equal to calling
/// mc_point_risk per probe with the same cfg.
std::vector<McEstimate> mc_points(const risk::UncertainObstacle& o, const std::vector<Probe>& probes,
                                  const McConfig& cfg);
/// Sequential reference for mc_points.
std::vector<McEstimate> mc_points_serial(const risk::UncertainObstacle& o,
                                         const std::vector<Probe>& probes, const McConfig& cfg);

struct ObstacleRiskProfile {
  std::string obstacle;
  std::vector<double> times;
  std::vector<McEstimate> estimates;
  std::size_t argmax = 0;
  double average = 0.0;
  /// Upper bound on the standard error of the average (mean of stderrs).
  double average_stderr = 0.0;

  const McEstimate& max() const { return estimates[argmax]; }
  /// Every time sample satisfies p_hat <= delta + 3 stderr.
  bool bounded_by(double delta) const;
};

struct TrajectoryRisk {
  std::vector<ObstacleRiskProfile> per_obstacle;

  double max_p_hat() const;
  bool bounded_by(double delta) const;
};

/// Risk along a trajectory at m evenly spaced times in [t0, tf] (m >= 10).
TrajectoryRisk mc_trajectory_risk(const safety::Trajectory& traj,
                                  const std::vector<risk::ObstaclePtr>& obstacles, std::size_t m,
                                  const McConfig& cfg);

struct ValidationEntry {
  std::vector<double> x;
  double bound = 0.0;
  McEstimate mc;
  bool violation = false;
};

/// Member points of one contour checked against Monte Carlo ground truth.
struct ValidationReport {
  std::string obstacle;
  double delta = 0.0;
  std::optional<double> t;
  std::size_t grid_points = 0;
  std::vector<ValidationEntry> entries;
  std::size_t violations = 0;
  /// Counts of (bound - p_hat) in ten equal bins over [0, 1]; negative gaps
  /// land in bin 0.
  std::array<std::size_t, 10> tightness{};
};

/// Asserts p_hat <= delta + 3 stderr at every member grid point.
ValidationReport validate_contour(const risk::RiskContour& c, const risk::GridSpec& grid,
                                  std::optional<double> t, const McConfig& cfg);

/// Several contours of the same obstacle; each grid point is sampled once
/// and the estimate reused for every contour that contains it.
std::vector<ValidationReport> validate_contours(const std::vector<risk::RiskContour>& contours,
                                                const risk::GridSpec& grid,
                                                std::optional<double> t, const McConfig& cfg);

/// Summary lines followed by the tightness histogram.
std::string to_text(const ValidationReport& r);
/// x..., bound, p_hat, stderr, verdict
std::string to_csv(const ValidationReport& r);

}  // namespace rcplan::oracle

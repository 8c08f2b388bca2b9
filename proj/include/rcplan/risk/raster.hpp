#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "rcplan/risk/contour.hpp"

namespace rcplan::risk {

/// Axis-aligned grid; the first axis varies slowest.
struct GridSpec {
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<int> resolution;

  static GridSpec uniform(std::vector<double> lower, std::vector<double> upper, int per_axis);

  std::size_t dim() const { return lower.size(); }
  std::size_t size() const;
  std::vector<double> point(std::size_t flat) const;
};

struct Raster {
  GridSpec grid;
  std::optional<double> t;
  double delta = 0.0;
  std::vector<RiskEvaluation> cells;

  std::size_t member_count() const;
};

/// Evaluates risk_bound_at over every grid point (OpenMP over points).
Raster rasterize(const RiskContour& c, const GridSpec& grid,
                 std::optional<double> t = std::nullopt);
/// Sequential reference; cell-for-cell identical to rasterize.
Raster rasterize_serial(const RiskContour& c, const GridSpec& grid,
                        std::optional<double> t = std::nullopt);

}  // namespace rcplan::risk

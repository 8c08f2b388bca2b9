#include "rcplan/risk/raster.hpp"

#include <algorithm>

#include "rcplan/error.hpp"

namespace rcplan::risk {

GridSpec GridSpec::uniform(std::vector<double> lower, std::vector<double> upper, int per_axis) {
  if (lower.size() != upper.size()) throw StructuralError("grid bounds differ in dimension");
  if (per_axis < 1) throw InputError("grid resolution must be >= 1");
  GridSpec g;
  g.resolution.assign(lower.size(), per_axis);
  g.lower = std::move(lower);
  g.upper = std::move(upper);
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t n = 1;
  for (int r : resolution) n *= static_cast<std::size_t>(r);
  return n;
}

std::vector<double> GridSpec::point(std::size_t flat) const {
  std::vector<double> x(dim());
  for (std::size_t k = dim(); k-- > 0;) {
    const auto n = static_cast<std::size_t>(resolution[k]);
    const std::size_t i = flat % n;
    flat /= n;
    x[k] = n == 1 ? lower[k]
                  : lower[k] + (upper[k] - lower[k]) * static_cast<double>(i) /
                                   static_cast<double>(n - 1);
  }
  return x;
}

std::size_t Raster::member_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells.begin(), cells.end(), [](const auto& e) { return e.member(); }));
}

namespace {

Raster prepare(const RiskContour& c, const GridSpec& grid, std::optional<double> t) {
  if (grid.dim() != c.state_dim())
    throw StructuralError("grid dimension does not match contour '" + c.name() + "'");
  if (c.dynamic() && !t) throw StructuralError("dynamic contour '" + c.name() + "' needs a time");
  Raster r;
  r.grid = grid;
  r.t = c.dynamic() ? t : std::nullopt;
  r.delta = c.delta();
  r.cells.resize(grid.size());
  return r;
}

}  // namespace

Raster rasterize(const RiskContour& c, const GridSpec& grid, std::optional<double> t) {
  Raster r = prepare(c, grid, t);
  const auto n = static_cast<std::ptrdiff_t>(r.cells.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    r.cells[idx] = risk_bound_at(c, grid.point(idx), t);
  }
  return r;
}

Raster rasterize_serial(const RiskContour& c, const GridSpec& grid, std::optional<double> t) {
  Raster r = prepare(c, grid, t);
  for (std::size_t i = 0; i < r.cells.size(); ++i) r.cells[i] = risk_bound_at(c, grid.point(i), t);
  return r;
}

}  // namespace rcplan::risk

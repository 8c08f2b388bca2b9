#pragma once

#include <string>
#include <vector>

#include "rcplan/risk/raster.hpp"

namespace rcplan::io {

/// `<vars>[,t],ep,ep2,bound,member`; the bound is empty where undefined.
std::string raster_csv(const risk::Raster& r, const std::string& obstacle,
                       const std::vector<std::string>& vars);

/// 16-bit binary PGM of the bound for 2D grids: first axis left to right,
/// second axis bottom to top, bound b as round(b * 65534), undefined as
/// 65535. Throws StructuralError for other dimensions.
std::string raster_pgm(const risk::Raster& r);

}  // namespace rcplan::io

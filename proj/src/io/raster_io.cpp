#include "rcplan/io/raster_io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "rcplan/error.hpp"

namespace rcplan::io {

std::string raster_csv(const risk::Raster& r, const std::string& obstacle,
                       const std::vector<std::string>& vars) {
  if (vars.size() != r.grid.dim()) throw StructuralError("raster dimension does not match variables");
  std::ostringstream os;
  char buf[64];
  std::snprintf(buf, sizeof buf, " delta=%.9g", r.delta);
  os << "# rcplan raster format_version=1 obstacle=" << obstacle << buf;
  if (r.t) {
    std::snprintf(buf, sizeof buf, " t=%.9g", *r.t);
    os << buf;
  }
  os << "\n";
  for (const auto& v : vars) os << v << ",";
  if (r.t) os << "t,";
  os << "ep,ep2,bound,member\n";
  for (const auto& c : r.cells) {
    for (double x : c.x) {
      std::snprintf(buf, sizeof buf, "%.9g,", x);
      os << buf;
    }
    if (r.t) {
      std::snprintf(buf, sizeof buf, "%.9g,", *r.t);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.9g,%.9g,", c.ep, c.ep2);
    os << buf;
    if (c.bound) {
      std::snprintf(buf, sizeof buf, "%.9g", *c.bound);
      os << buf;
    }
    os << "," << (c.member() ? 1 : 0) << "\n";
  }
  return os.str();
}

std::string raster_pgm(const risk::Raster& r) {
  if (r.grid.dim() != 2) throw StructuralError("PGM output needs a 2D grid");
  const int nx = r.grid.resolution[0], ny = r.grid.resolution[1];
  std::string out = "P5\n# rcplan raster format_version=1\n" + std::to_string(nx) + " " +
                    std::to_string(ny) + "\n65535\n";
  out.reserve(out.size() + static_cast<std::size_t>(nx) * ny * 2);
  for (int row = ny - 1; row >= 0; --row) {
    for (int col = 0; col < nx; ++col) {
      const auto& c = r.cells[static_cast<std::size_t>(col) * ny + row];
      const unsigned v =
          c.bound ? static_cast<unsigned>(std::lround(*c.bound * 65534.0)) : 65535u;
      out.push_back(static_cast<char>(v >> 8));
      out.push_back(static_cast<char>(v & 0xff));
    }
  }
  return out;
}

}  // namespace rcplan::io

#include "rcplan/io/trajectory_csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "rcplan/error.hpp"

namespace rcplan::io {

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

}  // namespace

std::string write_trajectory_csv(const safety::Trajectory& traj,
                                 const std::vector<std::string>& vars,
                                 std::size_t samples_per_segment) {
  if (vars.size() != traj.dim())
    throw StructuralError("trajectory dimension does not match the variable list");
  int max_deg = 0;
  for (const auto& seg : traj.segments())
    for (const auto& c : seg.curves) max_deg = std::max(max_deg, c.degree());

  std::ostringstream os;
  os << "# rcplan trajectory format_version=" << kTrajectoryFormatVersion << "\n";
  os << "segment,t_start,t_end,var";
  for (int k = 0; k <= max_deg; ++k) os << ",deg" << k;
  os << "\n";
  const auto& segs = traj.segments();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t v = 0; v < vars.size(); ++v) {
      os << i << "," << fmt17(segs[i].t1) << "," << fmt17(segs[i].t2) << "," << vars[v];
      for (int k = 0; k <= max_deg; ++k) os << "," << fmt17(segs[i].curves[v].coeff(k));
      os << "\n";
    }
  }
  if (samples_per_segment >= 2) {
    os << "# samples\nt";
    for (const auto& v : vars) os << "," << v;
    os << "\n";
    char buf[40];
    for (const auto& seg : segs) {
      for (std::size_t j = 0; j < samples_per_segment; ++j) {
        const double t = j + 1 == samples_per_segment
                             ? seg.t2
                             : seg.t1 + (seg.t2 - seg.t1) * static_cast<double>(j) /
                                            static_cast<double>(samples_per_segment - 1);
        std::snprintf(buf, sizeof buf, "%.9g", t);
        os << buf;
        for (double x : seg.position(t)) {
          std::snprintf(buf, sizeof buf, ",%.9g", x);
          os << buf;
        }
        os << "\n";
      }
    }
  }
  return os.str();
}

TrajectoryFile read_trajectory_csv(std::string_view text, std::string_view origin) {
  auto where = [&](std::size_t line) { return std::string(origin) + ":" + std::to_string(line) + ": "; };
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;

  // Header row.
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    header = split(line);
    break;
  }
  if (header.size() < 5 || header[0] != "segment" || header[1] != "t_start" ||
      header[2] != "t_end" || header[3] != "var") {
    throw InputError(where(lineno) + "expected header 'segment,t_start,t_end,var,deg0,...'");
  }
  for (std::size_t k = 4; k < header.size(); ++k) {
    if (trim(header[k]) != "deg" + std::to_string(k - 4))
      throw InputError(where(lineno) + "column " + std::to_string(k + 1) + " should be 'deg" +
                       std::to_string(k - 4) + "'");
  }

  struct Row {
    std::size_t line;
    std::size_t segment;
    double t1, t2;
    std::string var;
    std::vector<double> coeffs;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#' || line.rfind("t,", 0) == 0) break;  // sampled block
    const auto cells = split(line);
    if (cells.size() != header.size())
      throw InputError(where(lineno) + "expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(cells.size()));
    auto num = [&](std::size_t k) {
      const std::string cell = trim(cells[k]);
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (cell.empty() || *end != '\0' || !std::isfinite(v))
        throw InputError(where(lineno) + "column '" + header[k] + "': not a number: '" + cell + "'");
      return v;
    };
    Row r{lineno, 0, num(1), num(2), trim(cells[3]), {}};
    const double seg = num(0);
    if (seg < 0 || seg != std::floor(seg))
      throw InputError(where(lineno) + "column 'segment': not a segment index");
    r.segment = static_cast<std::size_t>(seg);
    for (std::size_t k = 4; k < cells.size(); ++k) r.coeffs.push_back(num(k));
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw InputError(where(lineno) + "no coefficient rows");

  // Variables are the distinct names of segment 0, in order.
  std::vector<std::string> vars;
  for (const auto& r : rows) {
    if (r.segment != 0) break;
    vars.push_back(r.var);
  }
  if (rows.size() % vars.size() != 0)
    throw InputError(where(rows.back().line) + "every segment needs one row per variable");

  std::vector<safety::Segment> segments;
  for (std::size_t i = 0; i * vars.size() < rows.size(); ++i) {
    std::vector<poly::UniPoly> curves;
    const Row& first = rows[i * vars.size()];
    for (std::size_t v = 0; v < vars.size(); ++v) {
      const Row& r = rows[i * vars.size() + v];
      if (r.segment != i)
        throw InputError(where(r.line) + "expected segment " + std::to_string(i));
      if (r.var != vars[v])
        throw InputError(where(r.line) + "expected variable '" + vars[v] + "'");
      if (r.t1 != first.t1 || r.t2 != first.t2)
        throw InputError(where(r.line) + "interval differs from the segment's first row");
      curves.emplace_back(r.coeffs);
    }
    if (!(first.t1 < first.t2))
      throw InputError(where(first.line) + "segment needs t_start < t_end");
    safety::Segment seg(std::move(curves), first.t1, first.t2);
    if (!segments.empty()) {
      const auto& prev = segments.back();
      if (std::abs(prev.t2 - seg.t1) > safety::kContinuityTol) {
        throw StructuralError(where(first.line) + "time gap: segment " + std::to_string(i) +
                              " starts at " + fmt17(seg.t1) + ", previous ends at " + fmt17(prev.t2));
      }
      const auto a = prev.end(), b = seg.start();
      for (std::size_t v = 0; v < vars.size(); ++v) {
        if (std::abs(a[v] - b[v]) > safety::kContinuityTol) {
          throw StructuralError(where(first.line) + "junction gap in '" + vars[v] + "' between segment " +
                                std::to_string(i - 1) + " (" + fmt17(a[v]) + ") and segment " +
                                std::to_string(i) + " (" + fmt17(b[v]) + ")");
        }
      }
    }
    segments.push_back(std::move(seg));
  }
  return TrajectoryFile{std::move(vars), safety::Trajectory(std::move(segments))};
}

}  // namespace rcplan::io

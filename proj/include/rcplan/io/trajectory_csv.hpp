#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rcplan/safety/trajectory.hpp"

namespace rcplan::io {

inline constexpr int kTrajectoryFormatVersion = 1;

/// Coefficient block
///   segment,t_start,t_end,var,deg0,deg1,...
/// (one row per segment and variable, %.17g, absolute time) followed by a
/// sampled block `t,<vars>` with `samples_per_segment` points per segment.
/// The coefficients are authoritative; the samples are for plotting.
std::string write_trajectory_csv(const safety::Trajectory& traj,
                                 const std::vector<std::string>& vars,
                                 std::size_t samples_per_segment = 200);

struct TrajectoryFile {
  std::vector<std::string> vars;
  safety::Trajectory trajectory;
};

/// Reads the coefficient block. Malformed rows throw InputError; time gaps
/// or position jumps between segments throw StructuralError. Both carry
/// "<origin>:<line>:".
TrajectoryFile read_trajectory_csv(std::string_view text, std::string_view origin = "<input>");

}  // namespace rcplan::io

#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rcplan/planner/scenario.hpp"

namespace rcplan::io {

inline constexpr int kScenarioFormatVersion = 1;

/// YAML scenario description. Every error is an InputError of the form
/// "<origin>:<line>: <field path>: <message>".
///
///   format_version: 1
///   state_vars: [x1, x2]
///   workspace: {min: [-1, -1], max: [1, 1]}
///   horizon: [0, 1]
///   delta: 0.1
///   start: [-1, -1]
///   goal: [1, 1]
///   obstacles:
///     - name: disc
///       uncertain_vars:
///         w: {type: uniform, lower: 0.3, upper: 0.4}
///       terms:
///         - {coeff: 1, powers: {w: 2}}
///         - {coeff: -1, powers: {x1: 2}}
///         - {coeff: -1, powers: {x2: 2}}
///
/// Distribution types: uniform (lower, upper), normal (mean, variance),
/// beta (a, b), moments (moments: [m0, m1, ...]). `t` names time and is
/// reserved. Each obstacle's variables are the state variables, then its
/// uncertain variables in file order, then t.
planner::Scenario parse_scenario(std::string_view text, std::string_view origin = "<input>");

planner::Scenario load_scenario(const std::filesystem::path& path);

/// Whole file as bytes; InputError if unreadable.
std::string read_file(const std::filesystem::path& path);

}  // namespace rcplan::io

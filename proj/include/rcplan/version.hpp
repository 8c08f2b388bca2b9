#pragma once

namespace rcplan {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace rcplan

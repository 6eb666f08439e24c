#pragma once

namespace gpd {
inline constexpr const char* kToolName = "gpdeform";
inline constexpr const char* kToolVersion = "0.1.0";
}  // namespace gpd

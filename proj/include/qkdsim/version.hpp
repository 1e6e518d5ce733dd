#pragma once

namespace qkdsim {

inline constexpr const char* kToolName = "qkdsim";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace qkdsim

#pragma once

namespace slant {

inline constexpr const char* kToolName = "slant";
inline constexpr const char* kVersion = "0.1.0";

}  // namespace slant

#pragma once

namespace decomp {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "decomp";

}  // namespace decomp

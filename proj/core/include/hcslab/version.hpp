#pragma once

namespace hcslab {

inline constexpr const char* kToolName = "hcslab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace hcslab

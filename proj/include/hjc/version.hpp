#pragma once

namespace hjc {

inline constexpr const char* kToolName = "hjc";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace hjc

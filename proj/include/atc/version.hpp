#pragma once

namespace atc {

inline constexpr const char* kToolName = "atc";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace atc

#pragma once

namespace aqec {

inline constexpr const char* kVersion = "aqec 0.1.0";

}  // namespace aqec

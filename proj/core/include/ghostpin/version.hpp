#pragma once

namespace ghostpin {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ghostpin

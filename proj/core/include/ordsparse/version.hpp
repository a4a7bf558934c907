#pragma once

namespace ordsparse {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ordsparse

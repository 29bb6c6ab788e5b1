#pragma once

namespace chernoff {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace chernoff

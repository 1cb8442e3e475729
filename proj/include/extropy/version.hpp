#pragma once

namespace extropy {

inline constexpr const char* kVersion = "0.3.0";

}  // namespace extropy

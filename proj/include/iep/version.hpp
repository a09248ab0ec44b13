#pragma once

namespace iep {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace iep

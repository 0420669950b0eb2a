#pragma once

namespace mhdinv {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace mhdinv

#pragma once

namespace hipsim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hipsim

#pragma once

namespace genres {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace genres

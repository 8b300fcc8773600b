#pragma once

namespace reliab {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace reliab

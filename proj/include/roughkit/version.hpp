#pragma once

namespace roughkit {

inline constexpr const char* kVersion = "0.1.0";

} // namespace roughkit

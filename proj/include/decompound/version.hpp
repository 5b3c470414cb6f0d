#pragma once

namespace decompound {

inline constexpr const char* kVersion = "0.1.0";

} // namespace decompound

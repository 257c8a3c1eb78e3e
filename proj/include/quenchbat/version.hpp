#pragma once

namespace quenchbat {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace quenchbat

#pragma once

namespace osculata {

inline constexpr const char* kVersion = "0.1.0";

} // namespace osculata

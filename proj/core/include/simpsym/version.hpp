#pragma once

namespace simpsym {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace simpsym

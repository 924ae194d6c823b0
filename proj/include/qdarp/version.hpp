#pragma once

namespace qdarp {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qdarp

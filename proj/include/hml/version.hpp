#pragma once

namespace hml {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hml

#pragma once

namespace algocert {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace algocert

#pragma once

#include <string_view>

namespace primepoly {

inline constexpr std::string_view kVersion = "primepoly 0.1.0";

}  // namespace primepoly

#pragma once

namespace plurilab {
inline constexpr const char* version = "0.1.0";
}

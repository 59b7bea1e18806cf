#pragma once

namespace lowlying {
inline constexpr const char* version = "0.1.0";
}

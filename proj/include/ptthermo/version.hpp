#pragma once

namespace ptthermo {
inline constexpr const char* kVersion = "0.1.0";
}

#pragma once

namespace tvbar {

inline constexpr const char* kVersion = "1.0.0";

}

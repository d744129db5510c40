#pragma once

namespace nerlab {
inline constexpr const char* kToolVersion = "0.1.0";
}

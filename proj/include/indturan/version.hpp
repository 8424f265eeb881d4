#pragma once

namespace indturan {
inline constexpr const char* kVersion = "0.1.0";
}

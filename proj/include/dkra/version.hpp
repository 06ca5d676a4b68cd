#pragma once

namespace dkra {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace dkra

#pragma once

namespace qcmap {

inline constexpr const char* kVersion = "0.1.0";

} // namespace qcmap

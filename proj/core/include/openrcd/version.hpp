#pragma once

namespace openrcd {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace openrcd

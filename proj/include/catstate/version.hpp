#pragma once

namespace catstate {

inline constexpr const char* version_string = "0.1.0";

}  // namespace catstate

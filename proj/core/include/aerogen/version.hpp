#pragma once

namespace aerogen {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace aerogen

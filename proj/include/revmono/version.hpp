#pragma once

namespace revmono {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace revmono

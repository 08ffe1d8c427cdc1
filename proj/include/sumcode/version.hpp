#pragma once

namespace sumcode {

inline constexpr const char* kVersion = "0.1.0";

}

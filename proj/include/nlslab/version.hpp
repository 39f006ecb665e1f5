#pragma once

namespace nlslab {

inline constexpr const char* kCodeVersion = "nlslab 0.1.0";

}  // namespace nlslab

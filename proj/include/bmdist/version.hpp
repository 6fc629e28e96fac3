#pragma once

namespace bmdist {

inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace bmdist

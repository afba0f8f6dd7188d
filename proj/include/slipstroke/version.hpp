#pragma once

namespace slipstroke {

inline constexpr const char* kToolVersion = "0.1.0";

// Version tag written into every exported file header. Bump when a
// serialized layout changes incompatibly.
inline constexpr int kFormatVersion = 1;

}  // namespace slipstroke

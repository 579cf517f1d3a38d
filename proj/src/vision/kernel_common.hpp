#pragma once

#include <cstdint>

namespace pixelneat::vision::kernels::detail {

inline constexpr double kBlockNorm = 400.0 * 255.0;

inline double match_score(std::int64_t sad, std::int64_t pixels) {
  return 1.0 - static_cast<double>(sad) / (765.0 * static_cast<double>(pixels));
}

inline int abs_diff(std::uint8_t a, std::uint8_t b) { return a > b ? a - b : b - a; }

}  // namespace pixelneat::vision::kernels::detail

#pragma once

#include "pixelneat/arena/sim.hpp"
#include "pixelneat/framebuffer.hpp"

namespace pixelneat::arena {

// Screen layout. The health-bar rectangles are part of the contract with the
// vision side; everything else is presentation.
inline constexpr PixelRect kPlayerBarRect{80, 40, 300, 12};
inline constexpr PixelRect kBossBarRect{150, 520, 500, 14};
inline constexpr Rgb kBarFill{200, 20, 20};
inline constexpr Rgb kBarEmpty{45, 18, 18};

inline constexpr PixelRect kArenaRect{180, 70, 440, 440};
inline constexpr double kPixelsPerUnit = kArenaRect.width / kArenaSize;

inline constexpr int kBannerWidth = 420;
inline constexpr int kBannerHeight = 64;
inline constexpr PixelRect kBannerRect{(kFrameWidth - kBannerWidth) / 2,
                                       (kFrameHeight - kBannerHeight) / 2, kBannerWidth,
                                       kBannerHeight};

enum class Banner { defeat, victory };

// "YOU DIED" / "VICTORY ACHIEVED" bitmaps, kBannerWidth x kBannerHeight.
const Framebuffer& banner_bitmap(Banner banner);

// Pure function of the state.
Framebuffer render(const SimState& state);
void render(const SimState& state, Framebuffer& out);

// Number of filled columns for a bar of the given width.
int bar_fill_columns(double health, int bar_width);

}  // namespace pixelneat::arena

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "pixelneat/framebuffer.hpp"

namespace pixelneat::vision {

inline constexpr int kGridWidth = 40;
inline constexpr int kGridHeight = 30;
inline constexpr int kBlockSize = kFrameWidth / kGridWidth;  // 20, exact tiling both ways
inline constexpr int kPlaneSize = kGridWidth * kGridHeight;  // 1200
inline constexpr int kPixelInputSize = 3 * kPlaneSize;       // 3600

static_assert(kBlockSize * kGridHeight == kFrameHeight);

// Channel-planar network input: 1200 R values, then G, then B, each plane
// row-major 40x30, every value in [0, 1].
using PixelInput = std::vector<double>;

struct Hsv {
  double h = 0.0;  // degrees, [0, 360)
  double s = 0.0;
  double v = 0.0;
};

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b);

struct HueWindow {
  double low = 0.0;   // inclusive, degrees
  double high = 0.0;  // inclusive, degrees
};

struct HsvMaskParams {
  std::vector<HueWindow> hue_windows{{0.0, 10.0}, {350.0, 360.0}};
  double s_min = 0.5;
  double v_min = 0.3;

  // Throws ContractViolation on out-of-range windows or thresholds.
  void validate() const;
  bool accepts(const Hsv& hsv) const;
};

// Binary bitmap, row-major, one byte (0/1) per pixel.
struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> bits;

  Mask() = default;
  Mask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

  std::uint8_t at(int x, int y) const { return bits[static_cast<std::size_t>(y) * width + x]; }
  void set(int x, int y, std::uint8_t v) { bits[static_cast<std::size_t>(y) * width + x] = v; }
  int count() const;

  friend bool operator==(const Mask&, const Mask&) = default;
};

struct BarRegion {
  PixelRect rect;
  int full_pixel_count = 0;  // mask-positive pixels after dilation on a full bar
};

struct Template {
  Framebuffer bitmap;
  PixelRect search_region;  // frame area the bitmap slides over
  double threshold = 0.95;
};

enum class TerminalBanner { none, defeat, victory };
const char* to_string(TerminalBanner banner);

// Box average over the 20x20 tiling; value = channel sum / (400 * 255).
// Throws ContractViolation unless the frame is 800x600.
PixelInput downscale(const Framebuffer& frame);

// Region-sized mask; throws ContractViolation if the region leaves the frame.
Mask apply_mask(const Framebuffer& frame, const PixelRect& region, const HsvMaskParams& params);

// 3x3 square structuring element, one pass, clipped at the edges.
Mask dilate(const Mask& mask);

// Mask -> dilate -> count.
int count_bar_pixels(const Framebuffer& frame, const PixelRect& region, const HsvMaskParams& params);

// 100 * count / full_pixel_count, clamped to [0, 100]. Throws
// CalibrationError when the region has no calibrated full count.
double extract_health(const Framebuffer& frame, const BarRegion& region, const HsvMaskParams& params);

// Max over offsets of 1 - SAD / (255 * 3 * template pixels).
double best_match_score(const Framebuffer& frame, const Template& tmpl);
// Same decision as best_match_score(...) >= threshold, with early exit.
bool match_template(const Framebuffer& frame, const Template& tmpl);

// Search region = bitmap centered on an 800x600 frame, grown by margin.
Template centered_template(Framebuffer bitmap, int margin, double threshold);

inline const PixelRect kDefaultPlayerBar{80, 40, 300, 12};
inline const PixelRect kDefaultBossBar{150, 520, 500, 14};
inline constexpr int kDefaultSearchMargin = 3;
inline constexpr double kDefaultMatchThreshold = 0.95;

struct VisionConfig {
  HsvMaskParams mask;
  PixelRect player_bar = kDefaultPlayerBar;
  PixelRect boss_bar = kDefaultBossBar;
  int search_margin = kDefaultSearchMargin;
  double match_threshold = kDefaultMatchThreshold;
};

struct Calibration {
  int player_full_pixels = 0;
  int boss_full_pixels = 0;

  friend bool operator==(const Calibration&, const Calibration&) = default;
};

// What one frame tells the agent side.
struct Observation {
  PixelInput pixels;
  double player_health = 0.0;
  double boss_health = 0.0;
  TerminalBanner terminal = TerminalBanner::none;
};

// The complete sensing pipeline: two calibrated health bars and the two
// banner templates. Const operations are safe to call concurrently.
class VisionSystem {
 public:
  VisionSystem(VisionConfig config, Template defeat, Template victory,
               std::optional<Calibration> calibration = std::nullopt);

  // Loads defeat.ppm and victory.ppm from asset_dir. Throws FormatError naming
  // the missing or malformed file.
  static VisionSystem from_assets(const VisionConfig& config, const std::filesystem::path& asset_dir,
                                  std::optional<Calibration> calibration = std::nullopt);

  // Measures full-bar pixel counts on a frame showing both bars full.
  Calibration measure(const Framebuffer& full_frame) const;
  void set_calibration(const Calibration& calibration);
  bool calibrated() const;

  double player_health(const Framebuffer& frame) const;
  double boss_health(const Framebuffer& frame) const;
  // Victory is checked first.
  TerminalBanner detect_terminal(const Framebuffer& frame) const;
  Observation observe(const Framebuffer& frame) const;

  const VisionConfig& config() const { return config_; }
  const Template& defeat_template() const { return defeat_; }
  const Template& victory_template() const { return victory_; }
  BarRegion player_region() const { return player_; }
  BarRegion boss_region() const { return boss_; }

 private:
  VisionConfig config_;
  Template defeat_;
  Template victory_;
  BarRegion player_;
  BarRegion boss_;
};

}  // namespace pixelneat::vision

#include "pixelneat/vision/vision.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pixelneat/errors.hpp"
#include "pixelneat/ppm.hpp"
#include "pixelneat/vision/kernels.hpp"

namespace pixelneat::vision {

Hsv rgb_to_hsv(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  const int mx = std::max({r, g, b});
  const int mn = std::min({r, g, b});
  const double delta = mx - mn;
  Hsv out;
  out.v = mx / 255.0;
  out.s = mx == 0 ? 0.0 : delta / mx;
  if (delta == 0.0) return out;
  double h;
  if (mx == r) {
    h = 60.0 * std::fmod((g - b) / delta, 6.0);
  } else if (mx == g) {
    h = 60.0 * ((b - r) / delta + 2.0);
  } else {
    h = 60.0 * ((r - g) / delta + 4.0);
  }
  if (h < 0.0) h += 360.0;
  if (h >= 360.0) h -= 360.0;
  out.h = h;
  return out;
}

void HsvMaskParams::validate() const {
  if (hue_windows.empty()) throw ContractViolation("mask needs at least one hue window");
  for (const auto& w : hue_windows)
    if (w.low < 0.0 || w.high > 360.0 || w.low > w.high)
      throw ContractViolation("hue window outside [0, 360] or inverted");
  if (s_min < 0.0 || s_min > 1.0 || v_min < 0.0 || v_min > 1.0)
    throw ContractViolation("mask saturation/value minimums must lie in [0, 1]");
}

bool HsvMaskParams::accepts(const Hsv& hsv) const {
  if (hsv.s < s_min || hsv.v < v_min) return false;
  return std::any_of(hue_windows.begin(), hue_windows.end(),
                     [&](const HueWindow& w) { return hsv.h >= w.low && hsv.h <= w.high; });
}

int Mask::count() const { return std::accumulate(bits.begin(), bits.end(), 0); }

const char* to_string(TerminalBanner banner) {
  switch (banner) {
    case TerminalBanner::none: return "none";
    case TerminalBanner::defeat: return "defeat";
    case TerminalBanner::victory: return "victory";
  }
  return "?";
}

PixelInput downscale(const Framebuffer& frame) {
  if (frame.width() != kFrameWidth || frame.height() != kFrameHeight)
    throw ContractViolation("downscale expects an 800x600 frame, got " + std::to_string(frame.width()) +
                            "x" + std::to_string(frame.height()));
  PixelInput out(kPixelInputSize);
  kernels::parallel::downscale(frame, out);
  return out;
}

Mask apply_mask(const Framebuffer& frame, const PixelRect& region, const HsvMaskParams& params) {
  if (!region.inside(frame.width(), frame.height())) throw ContractViolation("mask region leaves the frame");
  return kernels::parallel::hsv_mask(frame, region, params);
}

Mask dilate(const Mask& mask) { return kernels::parallel::dilate(mask); }

int count_bar_pixels(const Framebuffer& frame, const PixelRect& region, const HsvMaskParams& params) {
  return dilate(apply_mask(frame, region, params)).count();
}

double extract_health(const Framebuffer& frame, const BarRegion& region, const HsvMaskParams& params) {
  if (region.full_pixel_count <= 0)
    throw CalibrationError("health bar region is not calibrated (full_pixel_count = 0)");
  const int count = count_bar_pixels(frame, region.rect, params);
  return std::clamp(100.0 * count / region.full_pixel_count, 0.0, 100.0);
}

double best_match_score(const Framebuffer& frame, const Template& tmpl) {
  const auto scores = kernels::parallel::match_scores(frame, tmpl.bitmap, tmpl.search_region);
  return *std::max_element(scores.begin(), scores.end());
}

bool match_template(const Framebuffer& frame, const Template& tmpl) {
  return kernels::parallel::any_match(frame, tmpl.bitmap, tmpl.search_region, tmpl.threshold);
}

Template centered_template(Framebuffer bitmap, int margin, double threshold) {
  if (threshold < 0.0 || threshold > 1.0) throw ContractViolation("match threshold must lie in [0, 1]");
  PixelRect region{(kFrameWidth - bitmap.width()) / 2 - margin, (kFrameHeight - bitmap.height()) / 2 - margin,
                   bitmap.width() + 2 * margin, bitmap.height() + 2 * margin};
  if (!region.inside(kFrameWidth, kFrameHeight)) throw ContractViolation("template search region leaves the frame");
  return {std::move(bitmap), region, threshold};
}

VisionSystem::VisionSystem(VisionConfig config, Template defeat, Template victory,
                           std::optional<Calibration> calibration)
    : config_(std::move(config)), defeat_(std::move(defeat)), victory_(std::move(victory)) {
  config_.mask.validate();
  for (const PixelRect* r : {&config_.player_bar, &config_.boss_bar})
    if (!r->inside(kFrameWidth, kFrameHeight)) throw ContractViolation("health bar region leaves the frame");
  for (const Template* t : {&defeat_, &victory_})
    kernels::match_geometry(Framebuffer(), t->bitmap, t->search_region);
  player_.rect = config_.player_bar;
  boss_.rect = config_.boss_bar;
  if (calibration) set_calibration(*calibration);
}

VisionSystem VisionSystem::from_assets(const VisionConfig& config, const std::filesystem::path& asset_dir,
                                       std::optional<Calibration> calibration) {
  auto load = [&](const char* name) {
    const auto path = asset_dir / name;
    if (!std::filesystem::exists(path)) throw FormatError("missing template file " + path.string());
    try {
      return centered_template(read_ppm(path), config.search_margin, config.match_threshold);
    } catch (const FormatError& e) {
      throw FormatError(path.string() + ": " + e.what());
    }
  };
  Template defeat = load("defeat.ppm");
  Template victory = load("victory.ppm");
  return VisionSystem(config, std::move(defeat), std::move(victory), calibration);
}

Calibration VisionSystem::measure(const Framebuffer& full_frame) const {
  return {count_bar_pixels(full_frame, player_.rect, config_.mask),
          count_bar_pixels(full_frame, boss_.rect, config_.mask)};
}

void VisionSystem::set_calibration(const Calibration& calibration) {
  if (calibration.player_full_pixels <= 0 || calibration.boss_full_pixels <= 0)
    throw CalibrationError("calibration found no bar pixels");
  player_.full_pixel_count = calibration.player_full_pixels;
  boss_.full_pixel_count = calibration.boss_full_pixels;
}

bool VisionSystem::calibrated() const { return player_.full_pixel_count > 0 && boss_.full_pixel_count > 0; }

double VisionSystem::player_health(const Framebuffer& frame) const {
  return extract_health(frame, player_, config_.mask);
}

double VisionSystem::boss_health(const Framebuffer& frame) const {
  return extract_health(frame, boss_, config_.mask);
}

TerminalBanner VisionSystem::detect_terminal(const Framebuffer& frame) const {
  if (match_template(frame, victory_)) return TerminalBanner::victory;
  if (match_template(frame, defeat_)) return TerminalBanner::defeat;
  return TerminalBanner::none;
}

Observation VisionSystem::observe(const Framebuffer& frame) const {
  Observation o;
  o.terminal = detect_terminal(frame);
  o.player_health = player_health(frame);
  o.boss_health = boss_health(frame);
  o.pixels = downscale(frame);
  return o;
}

}  // namespace pixelneat::vision

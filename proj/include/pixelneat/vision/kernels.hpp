#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pixelneat/framebuffer.hpp"
#include "pixelneat/vision/vision.hpp"

// Pixel kernels in two builds: a plain serial reference and an OpenMP
// version. Both must produce bit-identical results; the public vision API
// routes to the parallel ones.
namespace pixelneat::vision::kernels {

struct MatchGeometry {
  int offsets_x = 0;
  int offsets_y = 0;
  std::int64_t pixels = 0;  // template pixel count
};

// Throws ContractViolation if the template does not fit the region or the
// region leaves the frame.
MatchGeometry match_geometry(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region);

namespace serial {
void downscale(const Framebuffer& frame, std::span<double> out);
Mask hsv_mask(const Framebuffer& frame, const PixelRect& region, const HsvMaskParams& params);
Mask dilate(const Mask& mask);
// Row-major score per (offset_x, offset_y).
std::vector<double> match_scores(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region);
bool any_match(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region, double threshold);
}  // namespace serial

namespace parallel {
void downscale(const Framebuffer& frame, std::span<double> out);
Mask hsv_mask(const Framebuffer& frame, const PixelRect& region, const HsvMaskParams& params);
Mask dilate(const Mask& mask);
std::vector<double> match_scores(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region);
bool any_match(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region, double threshold);
}  // namespace parallel

}  // namespace pixelneat::vision::kernels

#include <string>

#include "kernel_common.hpp"
#include "pixelneat/errors.hpp"
#include "pixelneat/vision/kernels.hpp"

namespace pixelneat::vision::kernels {

MatchGeometry match_geometry(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region) {
  if (!region.inside(frame.width(), frame.height()))
    throw ContractViolation("template search region leaves the frame");
  if (tmpl.width() > region.width || tmpl.height() > region.height)
    throw ContractViolation("template larger than its search region");
  return {region.width - tmpl.width() + 1, region.height - tmpl.height() + 1,
          static_cast<std::int64_t>(tmpl.width()) * tmpl.height()};
}

namespace serial {

void downscale(const Framebuffer& frame, std::span<double> out) {
  for (int by = 0; by < kGridHeight; ++by) {
    for (int bx = 0; bx < kGridWidth; ++bx) {
      std::int64_t sum[3] = {0, 0, 0};
      for (int y = by * kBlockSize; y < (by + 1) * kBlockSize; ++y) {
        const std::uint8_t* p = frame.row(y) + static_cast<std::size_t>(bx) * kBlockSize * 3;
        for (int x = 0; x < kBlockSize; ++x, p += 3) {
          sum[0] += p[0];
          sum[1] += p[1];
          sum[2] += p[2];
        }
      }
      const std::size_t cell = static_cast<std::size_t>(by) * kGridWidth + bx;
      for (int c = 0; c < 3; ++c)
        out[static_cast<std::size_t>(c) * kPlaneSize + cell] =
            static_cast<double>(sum[c]) / detail::kBlockNorm;
    }
  }
}

Mask hsv_mask(const Framebuffer& frame, const PixelRect& region, const HsvMaskParams& params) {
  Mask m(region.width, region.height);
  for (int y = 0; y < region.height; ++y) {
    const std::uint8_t* p = frame.row(region.y + y) + static_cast<std::size_t>(region.x) * 3;
    for (int x = 0; x < region.width; ++x, p += 3)
      m.set(x, y, params.accepts(rgb_to_hsv(p[0], p[1], p[2])) ? 1 : 0);
  }
  return m;
}

Mask dilate(const Mask& mask) {
  Mask out(mask.width, mask.height);
  for (int y = 0; y < mask.height; ++y) {
    for (int x = 0; x < mask.width; ++x) {
      std::uint8_t any = 0;
      for (int dy = -1; dy <= 1 && !any; ++dy) {
        const int yy = y + dy;
        if (yy < 0 || yy >= mask.height) continue;
        for (int dx = -1; dx <= 1; ++dx) {
          const int xx = x + dx;
          if (xx >= 0 && xx < mask.width && mask.at(xx, yy)) {
            any = 1;
            break;
          }
        }
      }
      out.set(x, y, any);
    }
  }
  return out;
}

std::vector<double> match_scores(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region) {
  const MatchGeometry g = match_geometry(frame, tmpl, region);
  std::vector<double> scores(static_cast<std::size_t>(g.offsets_x) * g.offsets_y);
  const std::size_t row_bytes = static_cast<std::size_t>(tmpl.width()) * 3;
  for (int oy = 0; oy < g.offsets_y; ++oy) {
    for (int ox = 0; ox < g.offsets_x; ++ox) {
      std::int64_t sad = 0;
      for (int y = 0; y < tmpl.height(); ++y) {
        const std::uint8_t* f = frame.row(region.y + oy + y) + static_cast<std::size_t>(region.x + ox) * 3;
        const std::uint8_t* t = tmpl.row(y);
        for (std::size_t i = 0; i < row_bytes; ++i) sad += detail::abs_diff(f[i], t[i]);
      }
      scores[static_cast<std::size_t>(oy) * g.offsets_x + ox] = detail::match_score(sad, g.pixels);
    }
  }
  return scores;
}

bool any_match(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region, double threshold) {
  const MatchGeometry g = match_geometry(frame, tmpl, region);
  const std::size_t row_bytes = static_cast<std::size_t>(tmpl.width()) * 3;
  for (int oy = 0; oy < g.offsets_y; ++oy) {
    for (int ox = 0; ox < g.offsets_x; ++ox) {
      std::int64_t sad = 0;
      bool alive = true;
      for (int y = 0; y < tmpl.height() && alive; ++y) {
        const std::uint8_t* f = frame.row(region.y + oy + y) + static_cast<std::size_t>(region.x + ox) * 3;
        const std::uint8_t* t = tmpl.row(y);
        for (std::size_t i = 0; i < row_bytes; ++i) sad += detail::abs_diff(f[i], t[i]);
        alive = detail::match_score(sad, g.pixels) >= threshold;
      }
      if (alive) return true;
    }
  }
  return false;
}

}  // namespace serial
}  // namespace pixelneat::vision::kernels

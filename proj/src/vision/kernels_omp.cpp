#include <algorithm>
#include <cstdlib>
#include <utility>

#include "kernel_common.hpp"
#include "pixelneat/vision/kernels.hpp"

namespace pixelneat::vision::kernels::parallel {

namespace {
// Below this many pixels a parallel region costs more than it saves.
constexpr std::int64_t kMinParallelWork = 1 << 15;
}  // namespace

void downscale(const Framebuffer& frame, std::span<double> out) {
  // One block row per iteration. Byte columns are summed down the 20 source
  // rows first (contiguous, vectorizes), then folded into 40 cells x 3.
  constexpr int kRowBytes = kFrameWidth * 3;
#pragma omp parallel for schedule(static)
  for (int by = 0; by < kGridHeight; ++by) {
    std::uint16_t cols[kRowBytes] = {};  // at most 20 * 255
    for (int y = by * kBlockSize; y < (by + 1) * kBlockSize; ++y) {
      const std::uint8_t* p = frame.row(y);
      for (int i = 0; i < kRowBytes; ++i) cols[i] = static_cast<std::uint16_t>(cols[i] + p[i]);
    }
    for (int bx = 0; bx < kGridWidth; ++bx) {
      std::uint32_t sum[3] = {0, 0, 0};
      const std::uint16_t* c = cols + bx * kBlockSize * 3;
      for (int x = 0; x < kBlockSize; ++x, c += 3) {
        sum[0] += c[0];
        sum[1] += c[1];
        sum[2] += c[2];
      }
      const std::size_t cell = static_cast<std::size_t>(by) * kGridWidth + bx;
      for (int ch = 0; ch < 3; ++ch)
        out[static_cast<std::size_t>(ch) * kPlaneSize + cell] = static_cast<double>(sum[ch]) / detail::kBlockNorm;
    }
  }
}

Mask hsv_mask(const Framebuffer& frame, const PixelRect& region, const HsvMaskParams& params) {
  Mask m(region.width, region.height);
#pragma omp parallel for schedule(static) if (static_cast<std::int64_t>(region.area()) >= kMinParallelWork)
  for (int y = 0; y < region.height; ++y) {
    const std::uint8_t* p = frame.row(region.y + y) + static_cast<std::size_t>(region.x) * 3;
    std::uint8_t* dst = m.bits.data() + static_cast<std::size_t>(y) * region.width;
    for (int x = 0; x < region.width; ++x, p += 3) dst[x] = params.accepts(rgb_to_hsv(p[0], p[1], p[2])) ? 1 : 0;
  }
  return m;
}

Mask dilate(const Mask& mask) {
  // Separable: horizontal 3-max, then vertical 3-max.
  const int w = mask.width;
  const int h = mask.height;
  Mask horiz(w, h);
  Mask out(w, h);
  const bool big = static_cast<std::int64_t>(w) * h >= kMinParallelWork;
#pragma omp parallel if (big)
  {
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) {
      const std::uint8_t* src = mask.bits.data() + static_cast<std::size_t>(y) * w;
      std::uint8_t* dst = horiz.bits.data() + static_cast<std::size_t>(y) * w;
      for (int x = 0; x < w; ++x) {
        std::uint8_t v = src[x];
        if (x > 0) v |= src[x - 1];
        if (x + 1 < w) v |= src[x + 1];
        dst[x] = v;
      }
    }
#pragma omp for schedule(static)
    for (int y = 0; y < h; ++y) {
      std::uint8_t* dst = out.bits.data() + static_cast<std::size_t>(y) * w;
      const std::uint8_t* mid = horiz.bits.data() + static_cast<std::size_t>(y) * w;
      const std::uint8_t* up = y > 0 ? mid - w : nullptr;
      const std::uint8_t* down = y + 1 < h ? mid + w : nullptr;
      for (int x = 0; x < w; ++x) {
        std::uint8_t v = mid[x];
        if (up) v |= up[x];
        if (down) v |= down[x];
        dst[x] = v;
      }
    }
  }
  return out;
}

namespace {

// Plain loop over bytes with a 32-bit accumulator; compiles to packed SAD.
int row_sad(const std::uint8_t* __restrict f, const std::uint8_t* __restrict t, int n) {
  int sad = 0;
  for (int i = 0; i < n; ++i) sad += std::abs(static_cast<int>(f[i]) - static_cast<int>(t[i]));
  return sad;
}

// Rows with the most template energy first: they separate a match from the
// dark arena fastest, so the budget check below bails out sooner.
std::vector<int> row_order(const Framebuffer& tmpl) {
  const int n = tmpl.width() * 3;
  std::vector<std::pair<std::uint32_t, int>> energy(static_cast<std::size_t>(tmpl.height()));
  for (int y = 0; y < tmpl.height(); ++y) {
    std::uint32_t e = 0;
    const std::uint8_t* t = tmpl.row(y);
    for (int i = 0; i < n; ++i) e += t[i];
    energy[static_cast<std::size_t>(y)] = {e, y};
  }
  std::stable_sort(energy.begin(), energy.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<int> order;
  order.reserve(energy.size());
  for (const auto& [e, y] : energy) order.push_back(y);
  return order;
}

}  // namespace

std::vector<double> match_scores(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region) {
  const MatchGeometry g = match_geometry(frame, tmpl, region);
  const int offsets = g.offsets_x * g.offsets_y;
  std::vector<double> scores(static_cast<std::size_t>(offsets));
  const int row_bytes = tmpl.width() * 3;
#pragma omp parallel for schedule(static)
  for (int k = 0; k < offsets; ++k) {
    const int ox = k % g.offsets_x;
    const int oy = k / g.offsets_x;
    std::int64_t sad = 0;
    for (int y = 0; y < tmpl.height(); ++y)
      sad += row_sad(frame.row(region.y + oy + y) + static_cast<std::size_t>(region.x + ox) * 3, tmpl.row(y),
                     row_bytes);
    scores[static_cast<std::size_t>(k)] = detail::match_score(sad, g.pixels);
  }
  return scores;
}

bool any_match(const Framebuffer& frame, const Framebuffer& tmpl, const PixelRect& region, double threshold) {
  const MatchGeometry g = match_geometry(frame, tmpl, region);
  const int offsets = g.offsets_x * g.offsets_y;
  const int row_bytes = tmpl.width() * 3;
  const std::vector<int> order = row_order(tmpl);
  int found = 0;
#pragma omp parallel for schedule(dynamic, 4) reduction(| : found)
  for (int k = 0; k < offsets; ++k) {
    const int ox = k % g.offsets_x;
    const int oy = k / g.offsets_x;
    std::int64_t sad = 0;
    bool alive = true;
    // The score only falls as SAD grows, so a partial sum already below
    // threshold settles this offset whatever the row order.
    for (std::size_t r = 0; r < order.size() && alive; ++r) {
      const int y = order[r];
      sad += row_sad(frame.row(region.y + oy + y) + static_cast<std::size_t>(region.x + ox) * 3, tmpl.row(y),
                     row_bytes);
      alive = detail::match_score(sad, g.pixels) >= threshold;
    }
    if (alive) found |= 1;
  }
  return found != 0;
}

}  // namespace pixelneat::vision::kernels::parallel

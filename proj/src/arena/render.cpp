#include "pixelneat/arena/render.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <string_view>

#include "pixelneat/errors.hpp"

namespace pixelneat::arena {

namespace {

constexpr Rgb kBackground{26, 28, 34};
constexpr Rgb kFloor{96, 90, 80};
constexpr Rgb kGrid{82, 77, 68};
constexpr Rgb kBarOutline{140, 140, 140};
constexpr Rgb kEstusFull{70, 170, 80};
constexpr Rgb kEstusEmpty{40, 50, 42};

constexpr Rgb kPlayerBody{70, 130, 210};
constexpr Rgb kPlayerRoll{120, 170, 235};
constexpr Rgb kPlayerTick{220, 220, 220};
constexpr Rgb kWeapon{235, 235, 235};
constexpr Rgb kHeavyWeapon{255, 215, 130};
constexpr Rgb kShield{160, 160, 175};
constexpr Rgb kParryRing{110, 210, 235};
constexpr Rgb kHealRing{90, 200, 100};

constexpr Rgb kBossBody{120, 84, 60};
constexpr Rgb kBossActive{180, 125, 80};
constexpr Rgb kBossRecovery{82, 62, 48};
constexpr Rgb kBossStagger{112, 112, 132};
constexpr Rgb kBossFacing{60, 40, 30};
constexpr Rgb kStaggerRing{200, 200, 220};
constexpr std::array<Rgb, kBossMoveCount> kTelegraphHalo = {{
    {240, 170, 40},   // swipe
    {250, 230, 80},   // slam
    {190, 110, 235},  // leap
}};

constexpr Rgb kDefeatBack{14, 8, 8};
constexpr Rgb kDefeatText{176, 28, 28};
constexpr Rgb kVictoryBack{14, 12, 6};
constexpr Rgb kVictoryText{222, 188, 80};

// 5x7 glyphs, one byte per row, low five bits, MSB on the left.
struct Glyph {
  char c;
  std::array<std::uint8_t, 7> rows;
};
constexpr std::array<Glyph, 13> kFont = {{
    {'A', {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'C', {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E}},
    {'D', {0x1E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x1E}},
    {'E', {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F}},
    {'H', {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11}},
    {'I', {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E}},
    {'O', {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'R', {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11}},
    {'T', {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04}},
    {'U', {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E}},
    {'V', {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04}},
    {'Y', {0x11, 0x11, 0x0A, 0x04, 0x04, 0x04, 0x04}},
    {' ', {0, 0, 0, 0, 0, 0, 0}},
}};
constexpr int kGlyphScale = 4;
constexpr int kGlyphAdvance = 6 * kGlyphScale;

void fill_rect(Framebuffer& f, int x0, int y0, int w, int h, Rgb c) {
  const int x1 = std::min(f.width(), x0 + w);
  const int y1 = std::min(f.height(), y0 + h);
  x0 = std::max(0, x0);
  y0 = std::max(0, y0);
  for (int y = y0; y < y1; ++y)
    for (int x = x0; x < x1; ++x) f.set_pixel(x, y, c);
}

// Annulus inner < r <= outer; inner < 0 gives a disc. Clipped to clip.
void fill_ring(Framebuffer& f, double cx, double cy, double inner, double outer, Rgb c,
               const PixelRect& clip) {
  const int x0 = std::max(clip.x, static_cast<int>(std::floor(cx - outer)));
  const int x1 = std::min(clip.x + clip.width - 1, static_cast<int>(std::ceil(cx + outer)));
  const int y0 = std::max(clip.y, static_cast<int>(std::floor(cy - outer)));
  const int y1 = std::min(clip.y + clip.height - 1, static_cast<int>(std::ceil(cy + outer)));
  const double in2 = inner < 0 ? -1.0 : inner * inner;
  const double out2 = outer * outer;
  for (int y = y0; y <= y1; ++y) {
    const double dy = y + 0.5 - cy;
    for (int x = x0; x <= x1; ++x) {
      const double dx = x + 0.5 - cx;
      const double d2 = dx * dx + dy * dy;
      if (d2 <= out2 && d2 > in2) f.set_pixel(x, y, c);
    }
  }
}

void draw_segment(Framebuffer& f, double x0, double y0, double dx, double dy, double length,
                  double width, Rgb c, const PixelRect& clip) {
  const int steps = static_cast<int>(std::ceil(length));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i);
    fill_ring(f, x0 + dx * t, y0 + dy * t, -1.0, width / 2.0, c, clip);
  }
}

void draw_text(Framebuffer& f, std::string_view text, int x, int y, Rgb c) {
  for (char ch : text) {
    const auto it = std::find_if(kFont.begin(), kFont.end(), [ch](const Glyph& g) { return g.c == ch; });
    if (it == kFont.end()) throw ContractViolation(std::string("no glyph for '") + ch + "'");
    for (int row = 0; row < 7; ++row)
      for (int col = 0; col < 5; ++col)
        if (it->rows[static_cast<std::size_t>(row)] & (0x10 >> col))
          fill_rect(f, x + col * kGlyphScale, y + row * kGlyphScale, kGlyphScale, kGlyphScale, c);
    x += kGlyphAdvance;
  }
}

Framebuffer make_banner(std::string_view text, Rgb back, Rgb ink) {
  Framebuffer b(kBannerWidth, kBannerHeight, back);
  // Thin frame so the banner edge is distinct from its interior.
  fill_rect(b, 0, 0, kBannerWidth, 2, ink);
  fill_rect(b, 0, kBannerHeight - 2, kBannerWidth, 2, ink);
  const int text_width = static_cast<int>(text.size()) * kGlyphAdvance - kGlyphScale;
  draw_text(b, text, (kBannerWidth - text_width) / 2, (kBannerHeight - 7 * kGlyphScale) / 2, ink);
  return b;
}

void blit(Framebuffer& dst, const Framebuffer& src, int x, int y) {
  for (int row = 0; row < src.height(); ++row)
    std::memcpy(dst.row(y + row) + static_cast<std::size_t>(x) * 3, src.row(row),
                static_cast<std::size_t>(src.width()) * 3);
}

const Framebuffer& static_layer() {
  static const Framebuffer layer = [] {
    Framebuffer f(kFrameWidth, kFrameHeight, kBackground);
    fill_rect(f, kArenaRect.x, kArenaRect.y, kArenaRect.width, kArenaRect.height, kFloor);
    for (int u = 0; u <= static_cast<int>(kArenaSize); u += 2) {
      const int off = static_cast<int>(std::lround(u * kPixelsPerUnit));
      const int gx = std::min(kArenaRect.x + off, kArenaRect.x + kArenaRect.width - 1);
      const int gy = std::min(kArenaRect.y + off, kArenaRect.y + kArenaRect.height - 1);
      fill_rect(f, gx, kArenaRect.y, 1, kArenaRect.height, kGrid);
      fill_rect(f, kArenaRect.x, gy, kArenaRect.width, 1, kGrid);
    }
    for (const PixelRect& bar : {kPlayerBarRect, kBossBarRect}) {
      fill_rect(f, bar.x - 1, bar.y - 1, bar.width + 2, bar.height + 2, kBarOutline);
      fill_rect(f, bar.x, bar.y, bar.width, bar.height, kBarEmpty);
    }
    return f;
  }();
  return layer;
}

double screen_x(double x) { return kArenaRect.x + x * kPixelsPerUnit; }
double screen_y(double y) { return kArenaRect.y + kArenaRect.height - y * kPixelsPerUnit; }

void draw_boss(Framebuffer& f, const BossState& b) {
  const double cx = screen_x(b.body.position.x);
  const double cy = screen_y(b.body.position.y);
  const double r = kBossRadius * kPixelsPerUnit;
  Rgb body = kBossBody;
  switch (b.stage) {
    case BossStage::idle: break;
    case BossStage::telegraph: {
      const Rgb halo = kTelegraphHalo[static_cast<std::size_t>(*b.current_move)];
      fill_ring(f, cx, cy, r + 4.0, r + 11.0, halo, kArenaRect);
      if (b.current_move == BossMove::leap) {
        const double tx = screen_x(b.leap_target.x);
        const double ty = screen_y(b.leap_target.y);
        draw_segment(f, tx - 10, ty - 10, 0.7071, 0.7071, 28.0, 4.0, halo, kArenaRect);
        draw_segment(f, tx - 10, ty + 10, 0.7071, -0.7071, 28.0, 4.0, halo, kArenaRect);
      }
      break;
    }
    case BossStage::active: body = kBossActive; break;
    case BossStage::recovery: body = kBossRecovery; break;
    case BossStage::staggered:
      body = kBossStagger;
      fill_ring(f, cx, cy, r + 3.0, r + 6.0, kStaggerRing, kArenaRect);
      break;
  }
  fill_ring(f, cx, cy, -1.0, r, body, kArenaRect);
  draw_segment(f, cx, cy, b.body.facing.x, -b.body.facing.y, r + 12.0, 5.0, kBossFacing, kArenaRect);
}

void draw_player(Framebuffer& f, const PlayerState& p) {
  const double cx = screen_x(p.body.position.x);
  const double cy = screen_y(p.body.position.y);
  const double fx = p.body.facing.x;
  const double fy = -p.body.facing.y;
  const double r = kPlayerRadius * kPixelsPerUnit;
  const auto action = p.current_action;
  if (action && is_roll(*action)) {
    fill_ring(f, cx, cy, -1.0, r * 0.75, kPlayerRoll, kArenaRect);
    return;
  }
  if (action == ActionCommand::parry) fill_ring(f, cx, cy, r + 2.0, r + 5.0, kParryRing, kArenaRect);
  if (action == ActionCommand::heal_estus) fill_ring(f, cx, cy, r + 2.0, r + 5.0, kHealRing, kArenaRect);
  fill_ring(f, cx, cy, -1.0, r, kPlayerBody, kArenaRect);
  if (action == ActionCommand::attack_standard) {
    draw_segment(f, cx, cy, fx, fy, 26.0, 3.0, kWeapon, kArenaRect);
  } else if (action == ActionCommand::attack_heavy) {
    draw_segment(f, cx, cy, fx, fy, 32.0, 5.0, kHeavyWeapon, kArenaRect);
  } else if (action == ActionCommand::block) {
    fill_ring(f, cx + fx * (r + 4), cy + fy * (r + 4), -1.0, 6.0, kShield, kArenaRect);
  } else {
    draw_segment(f, cx, cy, fx, fy, r + 4.0, 2.0, kPlayerTick, kArenaRect);
  }
}

void draw_bar(Framebuffer& f, const PixelRect& bar, double health) {
  const int cols = bar_fill_columns(health, bar.width);
  fill_rect(f, bar.x, bar.y, cols, bar.height, kBarFill);
}

}  // namespace

int bar_fill_columns(double health, int bar_width) {
  const double frac = std::clamp(health / kMaxHealth, 0.0, 1.0);
  return static_cast<int>(std::lround(frac * bar_width));
}

const Framebuffer& banner_bitmap(Banner banner) {
  static const Framebuffer defeat = make_banner("YOU DIED", kDefeatBack, kDefeatText);
  static const Framebuffer victory = make_banner("VICTORY ACHIEVED", kVictoryBack, kVictoryText);
  return banner == Banner::defeat ? defeat : victory;
}

void render(const SimState& state, Framebuffer& out) {
  if (out.width() != kFrameWidth || out.height() != kFrameHeight) out = Framebuffer();
  const auto src = static_layer().bytes();
  std::memcpy(out.bytes().data(), src.data(), src.size());

  draw_bar(out, kPlayerBarRect, state.player.body.health);
  draw_bar(out, kBossBarRect, state.boss.body.health);
  for (int i = 0; i < kStartingEstus; ++i)
    fill_rect(out, kPlayerBarRect.x + kPlayerBarRect.width + 12 + i * 12, kPlayerBarRect.y + 2, 8, 8,
              i < state.estus_remaining ? kEstusFull : kEstusEmpty);

  draw_boss(out, state.boss);
  draw_player(out, state.player);

  if (state.phase == Phase::player_dead) blit(out, banner_bitmap(Banner::defeat), kBannerRect.x, kBannerRect.y);
  if (state.phase == Phase::boss_dead) blit(out, banner_bitmap(Banner::victory), kBannerRect.x, kBannerRect.y);
}

Framebuffer render(const SimState& state) {
  Framebuffer out;
  render(state, out);
  return out;
}

}  // namespace pixelneat::arena

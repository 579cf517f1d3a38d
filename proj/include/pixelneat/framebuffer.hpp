#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pixelneat {

inline constexpr int kFrameWidth = 800;
inline constexpr int kFrameHeight = 600;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Row-major interleaved RGB, 8 bits per channel. The renderer always produces
// 800x600; other sizes exist so that size checks can be exercised.
class Framebuffer {
 public:
  Framebuffer() : Framebuffer(kFrameWidth, kFrameHeight) {}
  Framebuffer(int width, int height, Rgb fill = {})
      : width_(width), height_(height), data_(static_cast<std::size_t>(width) * height * 3) {
    this->fill(fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }

  std::uint8_t* row(int y) { return data_.data() + static_cast<std::size_t>(y) * width_ * 3; }
  const std::uint8_t* row(int y) const {
    return data_.data() + static_cast<std::size_t>(y) * width_ * 3;
  }

  Rgb pixel(int x, int y) const {
    const std::uint8_t* p = row(y) + static_cast<std::size_t>(x) * 3;
    return {p[0], p[1], p[2]};
  }
  void set_pixel(int x, int y, Rgb c) {
    std::uint8_t* p = row(y) + static_cast<std::size_t>(x) * 3;
    p[0] = c.r;
    p[1] = c.g;
    p[2] = c.b;
  }

  void fill(Rgb c) {
    for (std::size_t i = 0; i < data_.size(); i += 3) {
      data_[i] = c.r;
      data_[i + 1] = c.g;
      data_[i + 2] = c.b;
    }
  }

  std::span<std::uint8_t> bytes() { return data_; }
  std::span<const std::uint8_t> bytes() const { return data_; }

  friend bool operator==(const Framebuffer&, const Framebuffer&) = default;

 private:
  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

// Axis-aligned pixel rectangle [x, x+width) x [y, y+height).
struct PixelRect {
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  int area() const { return width * height; }
  bool inside(int frame_width, int frame_height) const {
    return x >= 0 && y >= 0 && width > 0 && height > 0 && x + width <= frame_width &&
           y + height <= frame_height;
  }
  friend bool operator==(const PixelRect&, const PixelRect&) = default;
};

}  // namespace pixelneat

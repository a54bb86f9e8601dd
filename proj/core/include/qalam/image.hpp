#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qalam/error.hpp"

namespace qalam {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Row-major 2-D pixel grid. A default-constructed grid is the 0x0 "null"
/// image; every other grid has width >= 1 and height >= 1.
template <typename Pixel, typename Tag>
class Grid {
 public:
  using pixel_type = Pixel;

  Grid() = default;

  Grid(int width, int height, Pixel fill = Pixel{})
      : width_(width), height_(height) {
    check_dims(width, height);
    pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  Grid(int width, int height, std::vector<Pixel> pixels)
      : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width, height);
    if (pixels_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
      throw InvalidImage("pixel count " + std::to_string(pixels_.size()) +
                         " does not match " + std::to_string(width) + "x" +
                         std::to_string(height));
    }
  }

  [[nodiscard]] int width() const noexcept { return width_; }
  [[nodiscard]] int height() const noexcept { return height_; }
  [[nodiscard]] bool empty() const noexcept { return pixels_.empty(); }
  [[nodiscard]] std::size_t size() const noexcept { return pixels_.size(); }

  [[nodiscard]] Pixel operator()(int row, int col) const {
    return pixels_[index(row, col)];
  }
  Pixel& operator()(int row, int col) { return pixels_[index(row, col)]; }

  [[nodiscard]] std::span<const Pixel> pixels() const noexcept { return pixels_; }
  [[nodiscard]] std::span<Pixel> pixels() noexcept { return pixels_; }

  [[nodiscard]] std::span<const Pixel> row(int r) const {
    return std::span<const Pixel>(pixels_).subspan(index(r, 0), static_cast<std::size_t>(width_));
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  static void check_dims(int width, int height) {
    if (width < 1 || height < 1) {
      throw InvalidImage("image dimensions must be positive, got " + std::to_string(width) +
                         "x" + std::to_string(height));
    }
  }

  [[nodiscard]] std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(col);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<Pixel> pixels_;
};

struct RgbTag;
struct GrayTag;
struct BinaryTag;

using RgbImage = Grid<Rgb, RgbTag>;
/// Intensities in [0,255]; 0 is black.
using GrayImage = Grid<std::uint8_t, GrayTag>;
/// Pixels are 0 (background) or 1 (ink). Producers in this library only
/// ever store those two values.
using BinaryImage = Grid<std::uint8_t, BinaryTag>;

inline constexpr std::uint8_t kInk = 1;
inline constexpr std::uint8_t kPaper = 0;

struct BoundingBox {
  int left = 0;
  int top = 0;
  int width = 0;
  int height = 0;

  [[nodiscard]] int right() const noexcept { return left + width; }
  [[nodiscard]] int bottom() const noexcept { return top + height; }

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Half-open column range [begin, end) measured from the RIGHT edge of a
/// word image, so begin = 0 is the rightmost column (Arabic reading order).
struct ColumnSpan {
  int begin = 0;
  int end = 0;

  [[nodiscard]] int width() const noexcept { return end - begin; }
  /// Twice the midpoint, kept integral so span arithmetic stays exact.
  [[nodiscard]] int midpoint2() const noexcept { return begin + end; }

  friend bool operator==(const ColumnSpan&, const ColumnSpan&) = default;
  friend auto operator<=>(const ColumnSpan&, const ColumnSpan&) = default;
};

}  // namespace qalam

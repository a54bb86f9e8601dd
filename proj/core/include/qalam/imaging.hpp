#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "qalam/image.hpp"

namespace qalam {

/// gray = round(0.299 R + 0.587 G + 0.114 B), dimensions preserved.
[[nodiscard]] GrayImage to_grayscale(const RgbImage& image);

/// Pixels with intensity strictly below `value` become ink.
struct FixedThreshold {
  int value = 128;
};

/// Threshold chosen by maximal between-class variance over the histogram.
struct OtsuThreshold {};

using BinarizePolicy = std::variant<FixedThreshold, OtsuThreshold>;

/// Returns T such that "ink iff intensity < T" maximizes between-class
/// variance. When several T tie (e.g. a two-level image), the middle of the
/// tied range is returned, so the result sits strictly between the levels.
[[nodiscard]] int otsu_threshold(const GrayImage& image);

[[nodiscard]] BinaryImage binarize(const GrayImage& image,
                                   const BinarizePolicy& policy = OtsuThreshold{});

[[nodiscard]] std::size_t ink_count(const BinaryImage& image);

/// Tight box around every ink pixel, or nullopt for a blank image.
[[nodiscard]] std::optional<BoundingBox> content_bounds(const BinaryImage& image);

/// Copy of the given rectangle; throws InvalidArgument if it leaves the image.
[[nodiscard]] BinaryImage sub_image(const BinaryImage& image, const BoundingBox& box);

struct Crop {
  BinaryImage image;
  BoundingBox box;
};

/// Minimal sub-rectangle holding all ink. Throws NoContent for blank input.
[[nodiscard]] Crop crop_to_content(const BinaryImage& image);

struct ExtractedWord {
  BinaryImage image;
  BoundingBox box;  // location in the page
};

inline constexpr int kDefaultWordGap = 100;

/// Splits a page into words at runs of >= gap_px blank columns. Words come
/// back right-to-left, each cropped to its ink.
[[nodiscard]] std::vector<ExtractedWord> extract_words(const BinaryImage& page,
                                                       int gap_px = kDefaultWordGap);

/// Nearest-neighbour resampling: dst(r, c) = src(r*H/h, c*W/w), floored.
[[nodiscard]] BinaryImage resize_nearest(const BinaryImage& image, int width, int height);

[[nodiscard]] BinaryImage complement(const BinaryImage& image);

}  // namespace qalam

#include "qalam/imaging.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <type_traits>

namespace qalam {
namespace {

void require_valid(const auto& image, const char* op) {
  if (image.empty()) {
    throw InvalidImage(std::string(op) + ": empty image");
  }
}

bool column_has_ink(const BinaryImage& image, int col) {
  for (int r = 0; r < image.height(); ++r) {
    if (image(r, col) != kPaper) return true;
  }
  return false;
}

}  // namespace

GrayImage to_grayscale(const RgbImage& image) {
  require_valid(image, "to_grayscale");
  GrayImage out(image.width(), image.height());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const double y = 0.299 * src[i].r + 0.587 * src[i].g + 0.114 * src[i].b;
    dst[i] = static_cast<std::uint8_t>(std::clamp<long>(std::lround(y), 0, 255));
  }
  return out;
}

int otsu_threshold(const GrayImage& image) {
  require_valid(image, "otsu_threshold");
  std::array<double, 256> hist{};
  for (auto v : image.pixels()) hist[v] += 1.0;

  const double total = static_cast<double>(image.size());
  double sum_all = 0.0;
  for (int i = 0; i < 256; ++i) sum_all += i * hist[i];

  // Candidate T splits the histogram into [0, T) and [T, 255].
  std::array<double, 257> variance{};
  double count_below = 0.0;
  double sum_below = 0.0;
  double best = 0.0;
  for (int t = 1; t <= 255; ++t) {
    count_below += hist[t - 1];
    sum_below += (t - 1) * hist[t - 1];
    const double count_above = total - count_below;
    if (count_below == 0.0 || count_above == 0.0) {
      variance[t] = 0.0;
      continue;
    }
    const double diff = sum_below * total - sum_all * count_below;
    variance[t] = diff * diff / (count_below * count_above);
    best = std::max(best, variance[t]);
  }

  const double tolerance = best * 1e-12;
  int first = -1;
  int last = -1;
  for (int t = 1; t <= 255; ++t) {
    if (best - variance[t] <= tolerance) {
      if (first < 0) first = t;
      last = t;
    } else if (first >= 0) {
      break;  // only the first plateau of maxima
    }
  }
  return (first + last) / 2;
}

BinaryImage binarize(const GrayImage& image, const BinarizePolicy& policy) {
  require_valid(image, "binarize");
  const int threshold = std::visit(
      [&](const auto& p) -> int {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, FixedThreshold>) {
          return p.value;
        } else {
          return otsu_threshold(image);
        }
      },
      policy);

  BinaryImage out(image.width(), image.height());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = src[i] < threshold ? kInk : kPaper;
  }
  return out;
}

std::size_t ink_count(const BinaryImage& image) {
  return static_cast<std::size_t>(
      std::count_if(image.pixels().begin(), image.pixels().end(),
                    [](std::uint8_t v) { return v != kPaper; }));
}

std::optional<BoundingBox> content_bounds(const BinaryImage& image) {
  int min_r = image.height(), max_r = -1;
  int min_c = image.width(), max_c = -1;
  for (int r = 0; r < image.height(); ++r) {
    auto row = image.row(r);
    for (int c = 0; c < image.width(); ++c) {
      if (row[static_cast<std::size_t>(c)] == kPaper) continue;
      min_r = std::min(min_r, r);
      max_r = std::max(max_r, r);
      min_c = std::min(min_c, c);
      max_c = std::max(max_c, c);
    }
  }
  if (max_r < 0) return std::nullopt;
  return BoundingBox{min_c, min_r, max_c - min_c + 1, max_r - min_r + 1};
}

BinaryImage sub_image(const BinaryImage& image, const BoundingBox& box) {
  if (box.width < 1 || box.height < 1 || box.left < 0 || box.top < 0 ||
      box.right() > image.width() || box.bottom() > image.height()) {
    throw InvalidArgument("sub_image: box outside " + std::to_string(image.width()) + "x" +
                          std::to_string(image.height()) + " image");
  }
  BinaryImage out(box.width, box.height);
  for (int r = 0; r < box.height; ++r) {
    auto src = image.row(box.top + r).subspan(static_cast<std::size_t>(box.left),
                                              static_cast<std::size_t>(box.width));
    std::copy(src.begin(), src.end(),
              out.pixels().begin() + static_cast<std::ptrdiff_t>(r) * box.width);
  }
  return out;
}

Crop crop_to_content(const BinaryImage& image) {
  require_valid(image, "crop_to_content");
  auto box = content_bounds(image);
  if (!box) throw NoContent("crop_to_content: image has no ink");
  return Crop{sub_image(image, *box), *box};
}

std::vector<ExtractedWord> extract_words(const BinaryImage& page, int gap_px) {
  require_valid(page, "extract_words");
  if (gap_px < 1) throw InvalidArgument("extract_words: gap_px must be >= 1");

  std::vector<ExtractedWord> words;
  auto emit = [&](int left, int right_exclusive) {
    const BoundingBox strip{left, 0, right_exclusive - left, page.height()};
    Crop crop = crop_to_content(sub_image(page, strip));
    crop.box.left += left;
    words.push_back({std::move(crop.image), crop.box});
  };

  // Right-to-left scan; a word closes once gap_px blank columns follow it.
  int word_right = -1;  // exclusive right edge of the open word
  int word_left = 0;
  int blank_run = 0;
  for (int c = page.width() - 1; c >= 0; --c) {
    if (column_has_ink(page, c)) {
      if (word_right < 0) word_right = c + 1;
      word_left = c;
      blank_run = 0;
    } else if (word_right >= 0 && ++blank_run >= gap_px) {
      emit(word_left, word_right);
      word_right = -1;
      blank_run = 0;
    }
  }
  if (word_right >= 0) emit(word_left, word_right);
  return words;
}

BinaryImage resize_nearest(const BinaryImage& image, int width, int height) {
  require_valid(image, "resize_nearest");
  if (width < 1 || height < 1) {
    throw InvalidImage("resize_nearest: target dimensions must be positive");
  }
  if (width == image.width() && height == image.height()) return image;

  std::vector<int> src_col(static_cast<std::size_t>(width));
  for (int c = 0; c < width; ++c) {
    src_col[static_cast<std::size_t>(c)] =
        static_cast<int>(static_cast<long long>(c) * image.width() / width);
  }
  BinaryImage out(width, height);
  for (int r = 0; r < height; ++r) {
    const int sr = static_cast<int>(static_cast<long long>(r) * image.height() / height);
    auto src = image.row(sr);
    for (int c = 0; c < width; ++c) {
      out(r, c) = src[static_cast<std::size_t>(src_col[static_cast<std::size_t>(c)])];
    }
  }
  return out;
}

BinaryImage complement(const BinaryImage& image) {
  BinaryImage out = image;
  for (auto& v : out.pixels()) v = v == kPaper ? kInk : kPaper;
  return out;
}

}  // namespace qalam

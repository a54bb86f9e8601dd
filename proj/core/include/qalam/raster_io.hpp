#pragma once

#include <filesystem>

#include "qalam/image.hpp"
#include "qalam/imaging.hpp"

namespace qalam {

/// Reads PNG (any colour type; alpha is composited onto white) or binary /
/// ASCII PGM and PPM. The format is sniffed from the file's magic bytes.
/// Throws IoError on unreadable or malformed files.
[[nodiscard]] RgbImage read_rgb(const std::filesystem::path& path);

/// read_rgb followed by to_grayscale.
[[nodiscard]] GrayImage read_gray(const std::filesystem::path& path);

[[nodiscard]] BinaryImage read_binary(const std::filesystem::path& path,
                                      const BinarizePolicy& policy = OtsuThreshold{});

/// 8-bit grayscale PNG; ink is written black (0), background white (255).
void write_png(const std::filesystem::path& path, const BinaryImage& image);
void write_png(const std::filesystem::path& path, const GrayImage& image);
void write_png(const std::filesystem::path& path, const RgbImage& image);

/// Binary (P5) PGM.
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

/// Maps ink to 0 and background to 255.
[[nodiscard]] GrayImage to_gray(const BinaryImage& image);

}  // namespace qalam

#include "qalam/raster_io.hpp"

#include <png.h>

#include <array>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>
#include <memory>
#include <string>

namespace qalam {
namespace {

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct PngImageGuard {
  png_image* image;
  ~PngImageGuard() { png_image_free(image); }
};

RgbImage decode_png(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  PngImageGuard guard{&image};
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw IoError(path.string() + ": " + image.message);
  }
  image.format = PNG_FORMAT_RGB;
  if (image.width == 0 || image.height == 0) throw IoError(path.string() + ": empty PNG");

  std::vector<unsigned char> buffer(PNG_IMAGE_SIZE(image));
  png_color white{255, 255, 255};
  if (!png_image_finish_read(&image, &white, buffer.data(), 0, nullptr)) {
    throw IoError(path.string() + ": " + image.message);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  std::vector<Rgb> pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (std::size_t i = 0; i < pixels.size(); ++i) {
    pixels[i] = Rgb{buffer[3 * i], buffer[3 * i + 1], buffer[3 * i + 2]};
  }
  return RgbImage(w, h, std::move(pixels));
}

// Netpbm header tokenizer: whitespace separated, '#' starts a comment.
class PnmReader {
 public:
  PnmReader(const std::vector<unsigned char>& bytes, const std::filesystem::path& path)
      : bytes_(bytes), path_(path) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail("expected integer");
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > 1'000'000) fail("integer out of range");
    }
    return static_cast<int>(value);
  }

  // Exactly one whitespace byte separates the header from binary data.
  void end_header() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail("truncated header");
    ++pos_;
  }

  unsigned char next_byte() {
    if (pos_ >= bytes_.size()) fail("truncated pixel data");
    return bytes_[pos_++];
  }

  void skip(std::size_t n) { pos_ += n; }

  [[noreturn]] void fail(const std::string& what) const {
    throw IoError(path_.string() + ": malformed netpbm (" + what + ")");
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const std::filesystem::path& path_;
  std::size_t pos_ = 0;
};

RgbImage decode_pnm(const std::vector<unsigned char>& bytes, const std::filesystem::path& path) {
  PnmReader reader(bytes, path);
  const char kind = static_cast<char>(bytes[1]);
  const bool binary = kind == '5' || kind == '6';
  const bool color = kind == '3' || kind == '6';
  reader.skip(2);
  const int w = reader.next_int();
  const int h = reader.next_int();
  const int maxval = reader.next_int();
  if (w < 1 || h < 1) reader.fail("zero dimension");
  if (maxval < 1 || maxval > 255) reader.fail("only 8-bit maxval is supported");
  if (binary) reader.end_header();

  auto sample = [&]() -> std::uint8_t {
    const int v = binary ? reader.next_byte() : reader.next_int();
    if (v > maxval) reader.fail("sample exceeds maxval");
    return static_cast<std::uint8_t>(v * 255 / maxval);
  };

  std::vector<Rgb> pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h));
  for (auto& p : pixels) {
    if (color) {
      p.r = sample();
      p.g = sample();
      p.b = sample();
    } else {
      p.r = p.g = p.b = sample();
    }
  }
  return RgbImage(w, h, std::move(pixels));
}

void write_png_buffer(const std::filesystem::path& path, int width, int height,
                      png_uint_32 format, const void* data) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;
  if (!png_image_write_to_file(&image, path.c_str(), 0, data, 0, nullptr)) {
    std::string message = image.message;
    png_image_free(&image);
    throw IoError("cannot write " + path.string() + ": " + message);
  }
}

}  // namespace

RgbImage read_rgb(const std::filesystem::path& path) {
  const auto bytes = slurp(path);
  static constexpr std::array<unsigned char, 8> kPngMagic{0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= kPngMagic.size() &&
      std::equal(kPngMagic.begin(), kPngMagic.end(), bytes.begin())) {
    return decode_png(bytes, path);
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && std::strchr("2356", bytes[1]) != nullptr &&
      bytes[1] != '\0') {
    return decode_pnm(bytes, path);
  }
  throw IoError(path.string() + ": not a PNG, PGM or PPM file");
}

GrayImage read_gray(const std::filesystem::path& path) { return to_grayscale(read_rgb(path)); }

BinaryImage read_binary(const std::filesystem::path& path, const BinarizePolicy& policy) {
  return binarize(read_gray(path), policy);
}

GrayImage to_gray(const BinaryImage& image) {
  GrayImage out(image.width(), image.height());
  auto src = image.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] == kPaper ? 255 : 0;
  return out;
}

void write_png(const std::filesystem::path& path, const BinaryImage& image) {
  write_png(path, to_gray(image));
}

void write_png(const std::filesystem::path& path, const GrayImage& image) {
  if (image.empty()) throw InvalidImage("write_png: empty image");
  write_png_buffer(path, image.width(), image.height(), PNG_FORMAT_GRAY, image.pixels().data());
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  if (image.empty()) throw InvalidImage("write_png: empty image");
  static_assert(sizeof(Rgb) == 3);
  write_png_buffer(path, image.width(), image.height(), PNG_FORMAT_RGB, image.pixels().data());
}

void write_pgm(const std::filesystem::path& path, const GrayImage& image) {
  if (image.empty()) throw InvalidImage("write_pgm: empty image");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << image.width() << ' ' << image.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.pixels().data()),
            static_cast<std::streamsize>(image.size()));
  if (!out) throw IoError("cannot write " + path.string());
}

}  // namespace qalam

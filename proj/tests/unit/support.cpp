#include "support.hpp"

#include <atomic>
#include <stdexcept>
#include <string>

#include <unistd.h>

#include "qalam/random.hpp"
#include "qalam/stock_glyphs.hpp"

namespace qalam::test {

BinaryImage from_rows(std::initializer_list<std::string_view> rows) {
  const int h = static_cast<int>(rows.size());
  const int w = h == 0 ? 0 : static_cast<int>(rows.begin()->size());
  BinaryImage img(w, h);
  int r = 0;
  for (auto row : rows) {
    if (static_cast<int>(row.size()) != w) throw std::invalid_argument("ragged rows");
    for (int c = 0; c < w; ++c) img(r, c) = row[static_cast<std::size_t>(c)] == '#' ? kInk : kPaper;
    ++r;
  }
  return img;
}

const TemplateDatabase& stock_db() {
  static const TemplateDatabase db = stock_database();
  return db;
}

BinaryImage random_binary(int width, int height, double ink, std::uint64_t seed) {
  SeededRng rng(seed);
  BinaryImage img(width, height);
  for (auto& px : img.pixels()) px = rng.bernoulli(ink) ? kInk : kPaper;
  return img;
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  path_ = std::filesystem::temp_directory_path() /
          ("qalam-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(path_);
  std::filesystem::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

}  // namespace qalam::test

#pragma once

#include <filesystem>
#include <initializer_list>
#include <string_view>

#include "qalam/image.hpp"
#include "qalam/template_db.hpp"

namespace qalam::test {

/// Rows of '#' (ink) and '.' (paper).
BinaryImage from_rows(std::initializer_list<std::string_view> rows);

/// The built-in two-writer database, built once per process.
const TemplateDatabase& stock_db();

/// Random 0/1 image with the given ink probability.
BinaryImage random_binary(int width, int height, double ink, std::uint64_t seed);

class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  [[nodiscard]] const std::filesystem::path& path() const { return path_; }
  [[nodiscard]] std::filesystem::path operator/(std::string_view name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

}  // namespace qalam::test

#pragma once

#include <bitset>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qalam/image.hpp"
#include "qalam/imaging.hpp"
#include "qalam/letters.hpp"

namespace qalam {

/// Every template glyph is normalized to this frame.
inline constexpr int kGlyphWidth = 38;
inline constexpr int kGlyphHeight = 50;
inline constexpr std::size_t kGlyphPixels =
    static_cast<std::size_t>(kGlyphWidth) * static_cast<std::size_t>(kGlyphHeight);

/// A 38x50 binary frame packed row-major, bit set = ink.
using GlyphBits = std::bitset<kGlyphPixels>;

/// Packs an image that is already exactly 38x50. Throws InvalidImage otherwise.
[[nodiscard]] GlyphBits pack_glyph(const BinaryImage& glyph);

struct TemplateEntry {
  BinaryImage glyph;
  Letter letter;
  PositionForm form = PositionForm::Isolated;
  WidthCategory category = WidthCategory::Small;
  std::string source_id;

  friend bool operator==(const TemplateEntry&, const TemplateEntry&) = default;
};

/// Builds an entry, assigning the category from the letter and checking the
/// glyph frame. Throws InvalidImage, NoContent or UnknownLetter.
[[nodiscard]] TemplateEntry make_entry(BinaryImage glyph, Letter letter, PositionForm form,
                                       std::string source_id);

struct DatabaseManifest {
  int version = 1;
  int resolution_ppi = 100;

  friend bool operator==(const DatabaseManifest&, const DatabaseManifest&) = default;
};

/// Immutable collection of template glyphs. Entry order is significant: it
/// breaks similarity ties during matching.
class TemplateDatabase {
 public:
  TemplateDatabase() = default;
  explicit TemplateDatabase(std::vector<TemplateEntry> entries, DatabaseManifest manifest = {});

  [[nodiscard]] std::span<const TemplateEntry> entries() const noexcept { return entries_; }
  [[nodiscard]] const TemplateEntry& operator[](std::size_t i) const { return entries_[i]; }
  [[nodiscard]] std::size_t size() const noexcept { return entries_.size(); }
  [[nodiscard]] bool empty() const noexcept { return entries_.empty(); }
  [[nodiscard]] const DatabaseManifest& manifest() const noexcept { return manifest_; }

  /// Packed glyphs, parallel to entries().
  [[nodiscard]] std::span<const GlyphBits> packed() const noexcept { return packed_; }

  /// Indices of the entries for `letter`, in database order.
  [[nodiscard]] std::vector<std::size_t> indices_of(Letter letter) const;
  /// Distinct letters present, in alphabet order.
  [[nodiscard]] std::vector<Letter> letters() const;

  friend bool operator==(const TemplateDatabase& a, const TemplateDatabase& b) {
    return a.manifest_ == b.manifest_ && a.entries_ == b.entries_;
  }

 private:
  std::vector<TemplateEntry> entries_;
  std::vector<GlyphBits> packed_;
  DatabaseManifest manifest_;
};

/// to_grayscale -> binarize -> crop_to_content -> resize_nearest(38, 50).
/// Throws NoContent when nothing survives binarization.
[[nodiscard]] TemplateEntry ingest_template(const RgbImage& raw, Letter letter, PositionForm form,
                                            std::string source_id,
                                            const BinarizePolicy& policy = OtsuThreshold{});
[[nodiscard]] TemplateEntry ingest_template(const GrayImage& raw, Letter letter, PositionForm form,
                                            std::string source_id,
                                            const BinarizePolicy& policy = OtsuThreshold{});

/// Writes <dir>/manifest.json and <dir>/glyphs/<codepoint>_<form>_<n>.png.
void save_db(const TemplateDatabase& db, const std::filesystem::path& dir);

/// Throws CorruptDatabase (naming the entry index) for a bad manifest,
/// unreadable or mis-sized glyph, unknown letter or inconsistent category.
[[nodiscard]] TemplateDatabase load_db(const std::filesystem::path& dir);

}  // namespace qalam

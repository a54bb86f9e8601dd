#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qalam/image.hpp"
#include "qalam/imaging.hpp"
#include "qalam/letters.hpp"
#include "qalam/matcher.hpp"
#include "qalam/template_db.hpp"

namespace qalam {

inline constexpr int kDefaultBaseWidth = 35;
inline constexpr double kDefaultScaleFactor = 1.6;
inline constexpr int kDefaultMaxWidenings = 3;

/// Segmentation parameters. A segment that fails to match at base_width is
/// retried at round(base_width * scale_factor^k) for k = 1..max_widenings.
/// max_widenings = 0 is plain fixed-width segmentation.
struct SegmenterConfig {
  int base_width = kDefaultBaseWidth;
  double scale_factor = kDefaultScaleFactor;
  int max_widenings = kDefaultMaxWidenings;
  MatchConfig match;

  void validate() const;
  /// Widths tried for one segment, k = 0..max_widenings (unclipped).
  [[nodiscard]] std::vector<int> width_ladder() const;
};

struct Recognized {
  Letter letter;
  PositionForm form = PositionForm::Isolated;
  double similarity = 0.0;
  std::size_t entry_index = 0;

  friend bool operator==(const Recognized&, const Recognized&) = default;
};

struct SegmentResult {
  ColumnSpan span;                   // raw span, before cropping
  std::optional<Recognized> match;   // nullopt = unrecognized ("?")
  int widenings = 0;                 // ladder step that produced the span

  [[nodiscard]] bool recognized() const noexcept { return match.has_value(); }

  friend bool operator==(const SegmentResult&, const SegmentResult&) = default;
};

struct WordRecognition {
  int word_width = 0;
  std::vector<SegmentResult> segments;  // right-to-left
  /// Base-width spans skipped because they held no ink. Together with the
  /// segment spans they tile [0, word_width).
  std::vector<ColumnSpan> blank_spans;
  /// One letter per recognized segment, "?" per unrecognized one.
  std::string text;

  friend bool operator==(const WordRecognition&, const WordRecognition&) = default;
};

struct Segment {
  ColumnSpan span;
  BinaryImage raw;                 // full-height column slice
  std::optional<Crop> content;     // raw cropped to ink; nullopt if blank
};

/// Cuts columns [W - cursor - w, W - cursor) with w = min(width, W - cursor).
/// Throws CursorExhausted when cursor >= W, InvalidArgument for width < 1.
[[nodiscard]] Segment next_segment(const BinaryImage& word, int cursor, int width);

/// Greedy right-to-left segmentation with adaptive widening.
/// Throws EmptyDatabase, NoContent (blank word), InvalidArgument (bad config).
[[nodiscard]] WordRecognition recognize_word(const BinaryImage& word, const TemplateDatabase& db,
                                             const SegmenterConfig& cfg);

struct PageWord {
  BoundingBox box;  // word location in the page
  WordRecognition recognition;
};

/// extract_words followed by recognize_word on every word, right to left.
[[nodiscard]] std::vector<PageWord> recognize_page(const BinaryImage& page,
                                                   const TemplateDatabase& db,
                                                   const SegmenterConfig& cfg,
                                                   int gap_px = kDefaultWordGap);

}  // namespace qalam

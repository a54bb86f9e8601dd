#include "qalam/recognizer.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace qalam {

void SegmenterConfig::validate() const {
  if (base_width < 1) throw InvalidArgument(fmt::format("base width {} < 1", base_width));
  if (!(scale_factor > 1.0) || !std::isfinite(scale_factor)) {
    throw InvalidArgument(fmt::format("scale factor {} must be > 1", scale_factor));
  }
  if (max_widenings < 0) {
    throw InvalidArgument(fmt::format("max widenings {} < 0", max_widenings));
  }
  match.validate();
}

std::vector<int> SegmenterConfig::width_ladder() const {
  std::vector<int> ladder;
  ladder.reserve(static_cast<std::size_t>(max_widenings) + 1);
  for (int k = 0; k <= max_widenings; ++k) {
    ladder.push_back(static_cast<int>(std::lround(base_width * std::pow(scale_factor, k))));
  }
  return ladder;
}

Segment next_segment(const BinaryImage& word, int cursor, int width) {
  if (word.empty()) throw InvalidImage("next_segment: empty word image");
  if (width < 1) throw InvalidArgument(fmt::format("next_segment: width {} < 1", width));
  if (cursor < 0 || cursor >= word.width()) {
    throw CursorExhausted(
        fmt::format("next_segment: cursor {} outside word of width {}", cursor, word.width()));
  }
  const int w = std::min(width, word.width() - cursor);
  const int left = word.width() - cursor - w;

  Segment seg;
  seg.span = ColumnSpan{cursor, cursor + w};
  seg.raw = sub_image(word, BoundingBox{left, 0, w, word.height()});
  if (auto box = content_bounds(seg.raw)) {
    seg.content = Crop{sub_image(seg.raw, *box), *box};
  }
  return seg;
}

WordRecognition recognize_word(const BinaryImage& word, const TemplateDatabase& db,
                               const SegmenterConfig& cfg) {
  cfg.validate();
  if (db.empty()) throw EmptyDatabase("recognize_word: template database is empty");
  if (word.empty() || !content_bounds(word)) throw NoContent("recognize_word: word has no ink");

  const auto ladder = cfg.width_ladder();
  WordRecognition result;
  result.word_width = word.width();

  int cursor = 0;
  while (cursor < word.width()) {
    const int remaining = word.width() - cursor;
    Segment base = next_segment(word, cursor, cfg.base_width);
    if (!base.content) {
      result.blank_spans.push_back(base.span);
      cursor = base.span.end;
      continue;
    }

    bool accepted = false;
    int previous_width = 0;
    for (int k = 0; k <= cfg.max_widenings; ++k) {
      const int w = std::min(ladder[static_cast<std::size_t>(k)], remaining);
      if (w == previous_width) continue;  // clipped to the same slice as before
      previous_width = w;

      const Segment seg = k == 0 ? base : next_segment(word, cursor, w);
      const auto candidates = match_segment(seg.content->image, db, cfg.match);
      if (candidates.empty()) continue;

      const auto& best = candidates.front();
      result.segments.push_back(SegmentResult{
          seg.span,
          Recognized{best.entry->letter, best.entry->form, best.similarity, best.index}, k});
      result.text += best.entry->letter.utf8();
      cursor = seg.span.end;
      accepted = true;
      break;
    }

    if (!accepted) {
      result.segments.push_back(SegmentResult{base.span, std::nullopt, 0});
      result.text += '?';
      cursor = base.span.end;
    }
  }
  return result;
}

std::vector<PageWord> recognize_page(const BinaryImage& page, const TemplateDatabase& db,
                                     const SegmenterConfig& cfg, int gap_px) {
  cfg.validate();
  if (db.empty()) throw EmptyDatabase("recognize_page: template database is empty");
  std::vector<PageWord> out;
  for (auto& word : extract_words(page, gap_px)) {
    out.push_back(PageWord{word.box, recognize_word(word.image, db, cfg)});
  }
  return out;
}

}  // namespace qalam

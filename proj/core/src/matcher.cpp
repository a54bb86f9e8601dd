#include "qalam/matcher.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "qalam/imaging.hpp"

namespace qalam {

void MatchConfig::validate() const {
  if (!(accept_threshold > 0.0 && accept_threshold <= 1.0)) {
    throw InvalidArgument(fmt::format("accept threshold {} outside (0, 1]", accept_threshold));
  }
  if (upper_threshold && !(*upper_threshold >= accept_threshold && *upper_threshold <= 1.0)) {
    throw InvalidArgument(fmt::format("upper threshold {} outside [{}, 1]", *upper_threshold,
                                      accept_threshold));
  }
}

bool MatchConfig::accepts(double similarity) const noexcept {
  if (similarity < accept_threshold) return false;
  return !upper_threshold || similarity <= *upper_threshold;
}

GlyphBits normalize_to_frame(const BinaryImage& image) {
  return pack_glyph(resize_nearest(image, kGlyphWidth, kGlyphHeight));
}

double frame_similarity(const GlyphBits& a, const GlyphBits& b,
                        SimilarityMeasure measure) noexcept {
  if (measure == SimilarityMeasure::InkOverlap) {
    const auto either = (a | b).count();
    if (either == 0) return 1.0;
    return static_cast<double>((a & b).count()) / static_cast<double>(either);
  }
  const auto disagree = (a ^ b).count();
  return static_cast<double>(kGlyphPixels - disagree) / static_cast<double>(kGlyphPixels);
}

double similarity(const BinaryImage& a, const BinaryImage& b) {
  return similarity(a, b, SimilarityMeasure::PixelAgreement);
}

double similarity(const BinaryImage& a, const BinaryImage& b, SimilarityMeasure measure) {
  return frame_similarity(normalize_to_frame(a), normalize_to_frame(b), measure);
}

std::string_view to_string(SimilarityMeasure measure) {
  return measure == SimilarityMeasure::InkOverlap ? "overlap" : "agreement";
}

SimilarityMeasure parse_similarity_measure(std::string_view text) {
  if (text == "agreement") return SimilarityMeasure::PixelAgreement;
  if (text == "overlap") return SimilarityMeasure::InkOverlap;
  throw InvalidArgument(fmt::format("unknown similarity measure '{}'", text));
}

std::vector<MatchCandidate> match_segment(const BinaryImage& segment, const TemplateDatabase& db,
                                          const MatchConfig& cfg) {
  if (db.empty()) throw EmptyDatabase("match_segment: template database is empty");
  cfg.validate();

  const auto frame = normalize_to_frame(segment);
  const auto packed = db.packed();
  std::vector<MatchCandidate> out;
  for (std::size_t i = 0; i < packed.size(); ++i) {
    const double s = frame_similarity(frame, packed[i], cfg.measure);
    if (cfg.accepts(s)) out.push_back({i, &db[i], s});
  }
  std::stable_sort(out.begin(), out.end(), [](const MatchCandidate& x, const MatchCandidate& y) {
    return x.similarity > y.similarity;
  });
  return out;
}

}  // namespace qalam

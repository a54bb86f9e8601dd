#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "qalam/image.hpp"
#include "qalam/template_db.hpp"

namespace qalam {

inline constexpr double kDefaultAcceptThreshold = 0.45;

/// How two normalized 38x50 frames are compared.
///  - PixelAgreement: positions where both frames agree (ink/ink or
///    paper/paper) over all 1900 positions.
///  - InkOverlap: positions inked in both over positions inked in either
///    (Jaccard index of the ink sets); two blank frames score 1.
enum class SimilarityMeasure { PixelAgreement, InkOverlap };

/// Acceptance band for template matches. With no upper bound every
/// similarity >= accept_threshold is accepted; with one, only the closed
/// band [accept_threshold, upper_threshold].
struct MatchConfig {
  double accept_threshold = kDefaultAcceptThreshold;
  std::optional<double> upper_threshold;
  SimilarityMeasure measure = SimilarityMeasure::PixelAgreement;

  /// Throws InvalidArgument unless 0 < accept <= upper <= 1.
  void validate() const;
  [[nodiscard]] bool accepts(double similarity) const noexcept;
};

struct MatchCandidate {
  std::size_t index = 0;  // position in the database
  const TemplateEntry* entry = nullptr;
  double similarity = 0.0;
};

/// Resamples to the 38x50 template frame and packs.
[[nodiscard]] GlyphBits normalize_to_frame(const BinaryImage& image);

[[nodiscard]] double frame_similarity(
    const GlyphBits& a, const GlyphBits& b,
    SimilarityMeasure measure = SimilarityMeasure::PixelAgreement) noexcept;

/// Both images are resampled to 38x50; the result is the fraction of the
/// 1900 positions where they agree (ink/ink or paper/paper).
[[nodiscard]] double similarity(const BinaryImage& a, const BinaryImage& b);
[[nodiscard]] double similarity(const BinaryImage& a, const BinaryImage& b,
                                SimilarityMeasure measure);

[[nodiscard]] std::string_view to_string(SimilarityMeasure measure);
/// "agreement" or "overlap"; throws InvalidArgument.
[[nodiscard]] SimilarityMeasure parse_similarity_measure(std::string_view text);

/// Every database entry inside the acceptance band, best first. Equal
/// similarities keep database order, so the candidate SET is invariant under
/// permuting the database but the order of ties is not. An empty result
/// means the segment is unrecognized. Throws EmptyDatabase.
[[nodiscard]] std::vector<MatchCandidate> match_segment(const BinaryImage& segment,
                                                        const TemplateDatabase& db,
                                                        const MatchConfig& cfg);

}  // namespace qalam

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qalam/recognizer.hpp"
#include "qalam/synth.hpp"
#include "qalam/template_db.hpp"

namespace qalam {

/// Character-level scores over a corpus.
///
/// Every recognized segment is credited to the ground-truth letter whose
/// span contains the segment's midpoint (the nearest span when none does).
/// A truth letter then counts as wrong if any segment credited to it names
/// another letter, correct if every credited segment names it, and
/// unrecognized if nothing was credited to it. A wrong acceptance is never
/// masked by a correct one, so in fixed-width mode recognized_wrong cannot
/// grow with the threshold.
struct EvalReport {
  std::size_t total_chars = 0;
  std::size_t recognized_correct = 0;
  std::size_t recognized_wrong = 0;
  std::size_t unrecognized = 0;
  double recognition_rate = 0.0;  // recognized_correct / total_chars
  double far = 0.0;               // recognized_wrong / total_chars
  /// truth letter -> predicted letter ("?" for unrecognized) -> count.
  /// Predictions are counted per credited segment.
  std::map<std::string, std::map<std::string, std::size_t>> confusion;

  friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

enum class LetterOutcome { Correct, Wrong, Unrecognized };

/// Per-letter outcome of one word, parallel to truth.letters.
[[nodiscard]] std::vector<LetterOutcome> score_word(const GroundTruthWord& truth,
                                                    const WordRecognition& recognition);

/// Scores precomputed recognitions (parallel to corpus). Throws EmptyCorpus.
[[nodiscard]] EvalReport tally(std::span<const GroundTruthWord> corpus,
                               std::span<const WordRecognition> recognitions);

/// Recognizes every word and tallies. threads = 0 uses the hardware
/// concurrency; the report does not depend on it.
/// Throws EmptyCorpus, EmptyDatabase, InvalidArgument.
[[nodiscard]] EvalReport evaluate(std::span<const GroundTruthWord> corpus,
                                  const TemplateDatabase& db, const SegmenterConfig& cfg,
                                  unsigned threads = 0);

/// A sweep column: a scale factor, or nullopt for the fixed-width baseline
/// (the base config with max_widenings = 0).
struct FactorSetting {
  std::optional<double> factor;

  [[nodiscard]] static FactorSetting fixed() { return {}; }
  [[nodiscard]] static FactorSetting scaled(double f) { return {f}; }
  [[nodiscard]] std::string label() const;
  /// "fixed" or a number; 1 is read as fixed.
  [[nodiscard]] static FactorSetting parse(const std::string& text);
};

struct SweepRow {
  FactorSetting factor;
  double threshold = 0.0;
  EvalReport report;
};

/// Configuration a sweep cell evaluates.
[[nodiscard]] SegmenterConfig cell_config(const SegmenterConfig& base, const FactorSetting& factor,
                                          double threshold);

/// Cartesian product, factor-major, rows in grid order.
/// Throws InvalidArgument for an empty grid.
[[nodiscard]] std::vector<SweepRow> sweep(std::span<const GroundTruthWord> corpus,
                                          const TemplateDatabase& db,
                                          const SegmenterConfig& base_cfg,
                                          std::span<const FactorSetting> factors,
                                          std::span<const double> thresholds,
                                          unsigned threads = 0);

/// Header `factor,threshold,recognition_rate,far`; rates with 4 decimals.
[[nodiscard]] std::string sweep_csv(std::span<const SweepRow> rows);

/// Pretty-printed JSON with the EvalReport fields.
[[nodiscard]] std::string report_json(const EvalReport& report);

}  // namespace qalam

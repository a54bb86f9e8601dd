#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "qalam/image.hpp"
#include "qalam/letters.hpp"
#include "qalam/template_db.hpp"

namespace qalam {

inline constexpr int kMinLetterGap = -5;

/// Recipe for one synthetic word. Letters are in reading order; the first
/// letter is rendered rightmost.
struct SynthSpec {
  std::vector<Letter> letters;
  int gap_px = 2;              // negative values overlap neighbours
  int jitter_px = 0;           // vertical offset drawn from [-jitter, +jitter]
  double noise_flip_rate = 0;  // per-pixel flip probability, in [0, 0.5)
  std::uint64_t seed = 0;

  /// Throws InvalidArgument.
  void validate() const;

  friend bool operator==(const SynthSpec&, const SynthSpec&) = default;
};

struct GroundTruthWord {
  BinaryImage image;
  std::vector<Letter> letters;
  std::vector<ColumnSpan> glyph_spans;       // parallel to letters, right origin
  std::vector<std::size_t> entry_indices;    // database entry used per letter
  SynthSpec spec;
};

/// Places one seeded-random glyph per letter right to left, ORs overlaps,
/// applies vertical jitter and then pixel-flip noise. The canvas is
/// 50 + 2*jitter rows tall. Draw order from SeededRng(spec.seed): for each
/// letter an entry choice then (if jitter > 0) an offset; then one
/// Bernoulli draw per pixel in row-major order (if noise > 0).
/// Throws MissingLetter, EmptyDatabase, InvalidArgument.
[[nodiscard]] GroundTruthWord compose_word(const SynthSpec& spec, const TemplateDatabase& db);

/// compose_word over every spec, order preserved. MissingLetter messages
/// carry the spec index.
[[nodiscard]] std::vector<GroundTruthWord> generate_corpus(std::span<const SynthSpec> specs,
                                                           const TemplateDatabase& db);

/// The three test words shin-meem-seen, jeem-alif-meem-ain-taa and
/// zay-raa-ain, sharing one noise/gap setting.
[[nodiscard]] std::vector<SynthSpec> reference_word_specs(int gap_px = 2, std::uint64_t seed = 1);

struct RandomWordOptions {
  std::size_t count = 100;
  int min_letters = 3;
  int max_letters = 5;
  int min_gap = 0;
  int max_gap = 4;
  int jitter_px = 0;
  double noise_flip_rate = 0.0;
  std::uint64_t seed = 7;
  /// Letters to draw from; empty means the whole alphabet.
  std::vector<Letter> letters;
};

/// Seeded random specs. Per word: length, then each letter, then gap, then
/// the word's own seed, all from one SeededRng(options.seed).
[[nodiscard]] std::vector<SynthSpec> random_word_specs(const RandomWordOptions& options);

/// Writes <dir>/words/<n>.png and <dir>/truth.json.
void save_corpus(std::span<const GroundTruthWord> corpus, const std::filesystem::path& dir);
/// Inverse of save_corpus. Throws IoError / InvalidArgument.
[[nodiscard]] std::vector<GroundTruthWord> load_corpus(const std::filesystem::path& dir);

/// JSON text for a spec list (the synth spec-file format), and its parser.
/// Letters are written as a UTF-8 string.
[[nodiscard]] std::string specs_to_json(std::span<const SynthSpec> specs);
[[nodiscard]] std::vector<SynthSpec> specs_from_json(const std::string& text);

}  // namespace qalam

#include "qalam/synth.hpp"

#include <algorithm>
#include <fstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "qalam/random.hpp"
#include "qalam/raster_io.hpp"

namespace qalam {
namespace {

using nlohmann::ordered_json;

ordered_json spec_json(const SynthSpec& spec) {
  ordered_json j;
  j["letters"] = to_utf8(spec.letters);
  j["gap_px"] = spec.gap_px;
  j["jitter_px"] = spec.jitter_px;
  j["noise_flip_rate"] = spec.noise_flip_rate;
  j["seed"] = spec.seed;
  return j;
}

SynthSpec spec_from(const nlohmann::json& j) {
  SynthSpec spec;
  spec.letters = parse_word(j.at("letters").get<std::string>());
  spec.gap_px = j.value("gap_px", spec.gap_px);
  spec.jitter_px = j.value("jitter_px", spec.jitter_px);
  spec.noise_flip_rate = j.value("noise_flip_rate", spec.noise_flip_rate);
  spec.seed = j.value("seed", spec.seed);
  spec.validate();
  return spec;
}

}  // namespace

void SynthSpec::validate() const {
  if (letters.empty()) throw InvalidArgument("synth spec has no letters");
  if (gap_px < kMinLetterGap) {
    throw InvalidArgument(fmt::format("letter gap {} below {}", gap_px, kMinLetterGap));
  }
  if (jitter_px < 0) throw InvalidArgument("jitter must be >= 0");
  if (!(noise_flip_rate >= 0.0 && noise_flip_rate < 0.5)) {
    throw InvalidArgument(fmt::format("noise flip rate {} outside [0, 0.5)", noise_flip_rate));
  }
}

GroundTruthWord compose_word(const SynthSpec& spec, const TemplateDatabase& db) {
  spec.validate();
  if (db.empty()) throw EmptyDatabase("compose_word: template database is empty");

  SeededRng rng(spec.seed);
  const int n = static_cast<int>(spec.letters.size());
  const int pitch = kGlyphWidth + spec.gap_px;
  const int width = n * kGlyphWidth + (n - 1) * spec.gap_px;
  const int height = kGlyphHeight + 2 * spec.jitter_px;

  GroundTruthWord word;
  word.image = BinaryImage(width, height);
  word.letters = spec.letters;
  word.spec = spec;

  for (int i = 0; i < n; ++i) {
    const Letter letter = spec.letters[static_cast<std::size_t>(i)];
    const auto choices = db.indices_of(letter);
    if (choices.empty()) {
      throw MissingLetter(fmt::format("database has no entry for {} ({})", letter.utf8(),
                                      letter.label()));
    }
    const std::size_t entry = choices[rng.below(choices.size())];
    const int dy = spec.jitter_px > 0 ? static_cast<int>(rng.between(-spec.jitter_px, spec.jitter_px))
                                      : 0;

    const ColumnSpan span{i * pitch, i * pitch + kGlyphWidth};
    const int left = width - span.end;
    const int top = spec.jitter_px + dy;
    const auto& glyph = db[entry].glyph;
    for (int r = 0; r < kGlyphHeight; ++r) {
      for (int c = 0; c < kGlyphWidth; ++c) {
        if (glyph(r, c) != kPaper) word.image(top + r, left + c) = kInk;
      }
    }
    word.glyph_spans.push_back(span);
    word.entry_indices.push_back(entry);
  }

  if (spec.noise_flip_rate > 0.0) {
    for (auto& px : word.image.pixels()) {
      if (rng.bernoulli(spec.noise_flip_rate)) px = px == kPaper ? kInk : kPaper;
    }
  }
  return word;
}

std::vector<GroundTruthWord> generate_corpus(std::span<const SynthSpec> specs,
                                             const TemplateDatabase& db) {
  std::vector<GroundTruthWord> corpus;
  corpus.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    try {
      corpus.push_back(compose_word(specs[i], db));
    } catch (const MissingLetter& e) {
      throw MissingLetter(fmt::format("spec {}: {}", i, e.what()));
    }
  }
  return corpus;
}

std::vector<SynthSpec> reference_word_specs(int gap_px, std::uint64_t seed) {
  std::vector<SynthSpec> specs;
  for (const char* word : {"شمس", "جامعة", "زرع"}) {
    SynthSpec spec;
    spec.letters = parse_word(word);
    spec.gap_px = gap_px;
    spec.seed = seed++;
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<SynthSpec> random_word_specs(const RandomWordOptions& options) {
  if (options.min_letters < 1 || options.max_letters < options.min_letters) {
    throw InvalidArgument("random words: need 1 <= min_letters <= max_letters");
  }
  if (options.min_gap < kMinLetterGap || options.max_gap < options.min_gap) {
    throw InvalidArgument("random words: need -5 <= min_gap <= max_gap");
  }
  const auto& pool_src = options.letters.empty()
                             ? std::vector<Letter>(alphabet().begin(), alphabet().end())
                             : options.letters;
  SeededRng rng(options.seed);
  std::vector<SynthSpec> specs;
  specs.reserve(options.count);
  for (std::size_t w = 0; w < options.count; ++w) {
    SynthSpec spec;
    const auto len = rng.between(options.min_letters, options.max_letters);
    for (std::int64_t i = 0; i < len; ++i) {
      spec.letters.push_back(pool_src[rng.below(pool_src.size())]);
    }
    spec.gap_px = static_cast<int>(rng.between(options.min_gap, options.max_gap));
    spec.jitter_px = options.jitter_px;
    spec.noise_flip_rate = options.noise_flip_rate;
    spec.seed = rng.next();
    spec.validate();
    specs.push_back(std::move(spec));
  }
  return specs;
}

void save_corpus(std::span<const GroundTruthWord> corpus, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir / "words", ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", (dir / "words").string(), ec.message()));

  ordered_json truth = ordered_json::array();
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& word = corpus[i];
    write_png(dir / "words" / fmt::format("{}.png", i), word.image);
    ordered_json item;
    item["index"] = i;
    ordered_json letters = ordered_json::array();
    for (auto l : word.letters) letters.push_back(l.utf8());
    item["letters"] = std::move(letters);
    ordered_json spans = ordered_json::array();
    for (const auto& s : word.glyph_spans) spans.push_back({s.begin, s.end});
    item["spans"] = std::move(spans);
    item["entries"] = word.entry_indices;
    item["spec"] = spec_json(word.spec);
    truth.push_back(std::move(item));
  }
  std::ofstream out(dir / "truth.json");
  if (!out) throw IoError("cannot write " + (dir / "truth.json").string());
  out << truth.dump(2) << '\n';
}

std::vector<GroundTruthWord> load_corpus(const std::filesystem::path& dir) {
  const auto truth_path = dir / "truth.json";
  std::ifstream in(truth_path);
  if (!in) throw IoError("cannot open " + truth_path.string());
  std::vector<GroundTruthWord> corpus;
  try {
    const auto truth = nlohmann::json::parse(in);
    for (const auto& item : truth) {
      GroundTruthWord word;
      const auto index = item.at("index").get<std::size_t>();
      word.image = read_binary(dir / "words" / fmt::format("{}.png", index), FixedThreshold{128});
      for (const auto& l : item.at("letters")) word.letters.push_back(parse_letter(l.get<std::string>()));
      for (const auto& s : item.at("spans")) {
        word.glyph_spans.push_back(ColumnSpan{s.at(0).get<int>(), s.at(1).get<int>()});
      }
      if (item.contains("entries")) {
        word.entry_indices = item.at("entries").get<std::vector<std::size_t>>();
      }
      word.spec = spec_from(item.at("spec"));
      if (word.glyph_spans.size() != word.letters.size()) {
        throw InvalidArgument(fmt::format("word {}: {} letters but {} spans", index,
                                          word.letters.size(), word.glyph_spans.size()));
      }
      corpus.push_back(std::move(word));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(fmt::format("{}: {}", truth_path.string(), e.what()));
  }
  return corpus;
}

std::string specs_to_json(std::span<const SynthSpec> specs) {
  ordered_json arr = ordered_json::array();
  for (const auto& s : specs) arr.push_back(spec_json(s));
  return arr.dump(2) + "\n";
}

std::vector<SynthSpec> specs_from_json(const std::string& text) {
  std::vector<SynthSpec> specs;
  try {
    const auto doc = nlohmann::json::parse(text);
    const auto& arr = doc.is_object() ? doc.at("words") : doc;
    if (!arr.is_array()) throw InvalidArgument("spec file must hold an array of word specs");
    for (const auto& item : arr) specs.push_back(spec_from(item));
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(fmt::format("spec file: {}", e.what()));
  }
  return specs;
}

}  // namespace qalam

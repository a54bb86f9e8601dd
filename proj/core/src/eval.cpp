#include "qalam/eval.hpp"

#include <cstdlib>
#include <limits>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "parallel.hpp"

namespace qalam {
namespace {

// Index of the truth span a segment midpoint falls in; ties and misses
// resolve to the span whose extent is nearest, then to the lower index.
std::size_t credited_letter(const std::vector<ColumnSpan>& truth, const ColumnSpan& segment) {
  const int mid2 = segment.midpoint2();
  std::size_t best = 0;
  int best_inside = 0;
  int best_distance = std::numeric_limits<int>::max();
  for (std::size_t i = 0; i < truth.size(); ++i) {
    const int lo = 2 * truth[i].begin;
    const int hi = 2 * truth[i].end;
    const int inside = (mid2 >= lo && mid2 < hi) ? 1 : 0;
    const int distance =
        inside ? std::abs(mid2 - truth[i].midpoint2()) : (mid2 < lo ? lo - mid2 : mid2 - hi);
    if (inside > best_inside || (inside == best_inside && distance < best_distance)) {
      best = i;
      best_inside = inside;
      best_distance = distance;
    }
  }
  return best;
}

EvalReport finish(EvalReport report) {
  if (report.total_chars > 0) {
    const auto total = static_cast<double>(report.total_chars);
    report.recognition_rate = static_cast<double>(report.recognized_correct) / total;
    report.far = static_cast<double>(report.recognized_wrong) / total;
  }
  return report;
}

}  // namespace

std::vector<LetterOutcome> score_word(const GroundTruthWord& truth,
                                      const WordRecognition& recognition) {
  if (truth.glyph_spans.size() != truth.letters.size()) {
    throw InvalidArgument("ground truth has mismatched letters and spans");
  }
  std::vector<LetterOutcome> outcome(truth.letters.size(), LetterOutcome::Unrecognized);
  if (truth.letters.empty()) return outcome;
  for (const auto& seg : recognition.segments) {
    if (!seg.match) continue;
    const auto i = credited_letter(truth.glyph_spans, seg.span);
    if (seg.match->letter != truth.letters[i]) {
      outcome[i] = LetterOutcome::Wrong;
    } else if (outcome[i] == LetterOutcome::Unrecognized) {
      outcome[i] = LetterOutcome::Correct;
    }
  }
  return outcome;
}

EvalReport tally(std::span<const GroundTruthWord> corpus,
                 std::span<const WordRecognition> recognitions) {
  if (corpus.empty()) throw EmptyCorpus("evaluation corpus is empty");
  if (corpus.size() != recognitions.size()) {
    throw InvalidArgument("tally: corpus and recognitions differ in length");
  }
  EvalReport report;
  for (std::size_t w = 0; w < corpus.size(); ++w) {
    const auto& truth = corpus[w];
    const auto outcomes = score_word(truth, recognitions[w]);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
      ++report.total_chars;
      switch (outcomes[i]) {
        case LetterOutcome::Correct: ++report.recognized_correct; break;
        case LetterOutcome::Wrong: ++report.recognized_wrong; break;
        case LetterOutcome::Unrecognized:
          ++report.unrecognized;
          ++report.confusion[truth.letters[i].utf8()]["?"];
          break;
      }
    }
    for (const auto& seg : recognitions[w].segments) {
      if (!seg.match || truth.letters.empty()) continue;
      const auto i = credited_letter(truth.glyph_spans, seg.span);
      ++report.confusion[truth.letters[i].utf8()][seg.match->letter.utf8()];
    }
  }
  return finish(std::move(report));
}

EvalReport evaluate(std::span<const GroundTruthWord> corpus, const TemplateDatabase& db,
                    const SegmenterConfig& cfg, unsigned threads) {
  if (corpus.empty()) throw EmptyCorpus("evaluation corpus is empty");
  cfg.validate();
  if (db.empty()) throw EmptyDatabase("evaluate: template database is empty");

  std::vector<WordRecognition> recognitions(corpus.size());
  detail::parallel_for(corpus.size(), threads, [&](std::size_t i) {
    recognitions[i] = recognize_word(corpus[i].image, db, cfg);
  });
  return tally(corpus, recognitions);
}

std::string FactorSetting::label() const {
  return factor ? fmt::format("{}", *factor) : std::string("fixed");
}

FactorSetting FactorSetting::parse(const std::string& text) {
  if (text == "fixed") return fixed();
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw InvalidArgument(fmt::format("bad scale factor '{}'", text));
  }
  // A factor of 1 never widens: the same thing as the fixed baseline.
  if (value == 1.0) return fixed();
  return scaled(value);
}

SegmenterConfig cell_config(const SegmenterConfig& base, const FactorSetting& factor,
                            double threshold) {
  SegmenterConfig cfg = base;
  if (factor.factor) {
    cfg.scale_factor = *factor.factor;
  } else {
    cfg.max_widenings = 0;
  }
  cfg.match.accept_threshold = threshold;
  return cfg;
}

std::vector<SweepRow> sweep(std::span<const GroundTruthWord> corpus, const TemplateDatabase& db,
                            const SegmenterConfig& base_cfg, std::span<const FactorSetting> factors,
                            std::span<const double> thresholds, unsigned threads) {
  if (factors.empty()) throw InvalidArgument("sweep: factor list is empty");
  if (thresholds.empty()) throw InvalidArgument("sweep: threshold list is empty");
  std::vector<SweepRow> rows;
  for (const auto& f : factors) {
    for (double t : thresholds) {
      const auto cfg = cell_config(base_cfg, f, t);
      cfg.validate();
      rows.push_back(SweepRow{f, t, evaluate(corpus, db, cfg, threads)});
    }
  }
  return rows;
}

std::string sweep_csv(std::span<const SweepRow> rows) {
  std::string out = "factor,threshold,recognition_rate,far\n";
  for (const auto& row : rows) {
    out += fmt::format("{},{},{:.4f},{:.4f}\n", row.factor.label(), row.threshold,
                       row.report.recognition_rate, row.report.far);
  }
  return out;
}

std::string report_json(const EvalReport& report) {
  nlohmann::ordered_json j;
  j["total_chars"] = report.total_chars;
  j["recognized_correct"] = report.recognized_correct;
  j["recognized_wrong"] = report.recognized_wrong;
  j["unrecognized"] = report.unrecognized;
  j["recognition_rate"] = report.recognition_rate;
  j["far"] = report.far;
  nlohmann::ordered_json confusion = nlohmann::ordered_json::object();
  for (const auto& [truth, row] : report.confusion) {
    nlohmann::ordered_json predicted = nlohmann::ordered_json::object();
    for (const auto& [letter, count] : row) predicted[letter] = count;
    confusion[truth] = std::move(predicted);
  }
  j["confusion"] = std::move(confusion);
  return j.dump(2) + "\n";
}

}  // namespace qalam

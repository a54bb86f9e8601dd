#include <gtest/gtest.h>

#include "qalam/error.hpp"
#include "qalam/random.hpp"
#include "qalam/recognizer.hpp"
#include "qalam/synth.hpp"
#include "support.hpp"

namespace qalam {
namespace {

using test::random_binary;
using test::stock_db;

BinaryImage columns(const BinaryImage& img, int left, int width) {
  return sub_image(img, BoundingBox{left, 0, width, img.height()});
}

TEST(NextSegment, RightmostBaseWidth) {
  const auto word = random_binary(105, 50, 0.3, 1);
  const auto seg = next_segment(word, 0, 35);
  EXPECT_EQ(seg.span, (ColumnSpan{0, 35}));
  EXPECT_EQ(seg.raw, columns(word, 70, 35));
  const auto second = next_segment(word, 35, 35);
  EXPECT_EQ(second.raw, columns(word, 35, 35));
}

TEST(NextSegment, ClipsToWord) {
  const auto word = random_binary(20, 50, 0.3, 2);
  const auto seg = next_segment(word, 0, 35);
  EXPECT_EQ(seg.span, (ColumnSpan{0, 20}));
  EXPECT_EQ(seg.raw, word);
}

TEST(NextSegment, ExhaustedAndBadWidth) {
  const auto word = random_binary(20, 50, 0.3, 3);
  EXPECT_THROW((void)next_segment(word, 20, 35), CursorExhausted);
  EXPECT_THROW((void)next_segment(word, 0, 0), InvalidArgument);
}

TEST(NextSegment, BlankSliceHasNoContent) {
  BinaryImage word(70, 50);
  word(10, 5) = kInk;  // only in the left half
  EXPECT_FALSE(next_segment(word, 0, 35).content);
  const auto left = next_segment(word, 35, 35);
  ASSERT_TRUE(left.content);
  EXPECT_EQ(left.content->box, (BoundingBox{5, 10, 1, 1}));
}

TEST(SegmenterConfig, DefaultLadder) {
  // 35 * 1.6^k = 35, 56, 89.6, 143.36
  EXPECT_EQ(SegmenterConfig{}.width_ladder(), (std::vector<int>{35, 56, 90, 143}));
  SegmenterConfig c13;
  c13.scale_factor = 1.3;  // 35, 45.5, 59.15, 76.895
  EXPECT_EQ(c13.width_ladder(), (std::vector<int>{35, 46, 59, 77}));
  SegmenterConfig fixed;
  fixed.max_widenings = 0;
  EXPECT_EQ(fixed.width_ladder(), (std::vector<int>{35}));
}

TEST(SegmenterConfig, Validation) {
  SegmenterConfig c;
  c.scale_factor = 1.0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.base_width = 0;
  EXPECT_THROW(c.validate(), InvalidArgument);
  c = {};
  c.max_widenings = -1;
  EXPECT_THROW(c.validate(), InvalidArgument);
}

// Segment and blank spans are disjoint and tile [0, W); segment spans
// appear right to left; each width is the clipped ladder width its
// widening step names.
void expect_partition(const WordRecognition& rec, const SegmenterConfig& cfg) {
  const auto ladder = cfg.width_ladder();
  std::vector<ColumnSpan> all;
  for (const auto& s : rec.segments) all.push_back(s.span);
  for (const auto& b : rec.blank_spans) all.push_back(b);
  std::sort(all.begin(), all.end());
  int expect_begin = 0;
  for (const auto& s : all) {
    ASSERT_EQ(s.begin, expect_begin);
    ASSERT_GT(s.end, s.begin);
    expect_begin = s.end;
  }
  ASSERT_EQ(expect_begin, rec.word_width);

  for (std::size_t i = 1; i < rec.segments.size(); ++i) {
    ASSERT_LT(rec.segments[i - 1].span.begin, rec.segments[i].span.begin);
  }
  for (const auto& s : rec.segments) {
    const int remaining = rec.word_width - s.span.begin;
    ASSERT_GE(s.widenings, 0);
    ASSERT_LE(s.widenings, cfg.max_widenings);
    if (s.recognized()) {
      ASSERT_EQ(s.span.width(),
                std::min(ladder[static_cast<std::size_t>(s.widenings)], remaining));
    } else {
      ASSERT_EQ(s.widenings, 0);
      ASSERT_EQ(s.span.width(), std::min(cfg.base_width, remaining));
    }
  }
  for (const auto& b : rec.blank_spans) {
    ASSERT_EQ(b.width(), std::min(cfg.base_width, rec.word_width - b.begin));
  }

  std::string text;
  for (const auto& s : rec.segments) text += s.match ? s.match->letter.utf8() : "?";
  ASSERT_EQ(rec.text, text);
}

TEST(RecognizeWord, SingleGlyphReadsItsLetterFirst) {
  const auto& db = stock_db();
  const SegmenterConfig cfg;
  for (std::size_t i = 0; i < db.size(); ++i) {
    const auto rec = recognize_word(db[i].glyph, db, cfg);
    ASSERT_FALSE(rec.segments.empty());
    ASSERT_TRUE(rec.segments.front().match) << i;
    EXPECT_EQ(rec.segments.front().match->letter, db[i].letter) << "entry " << i;
    expect_partition(rec, cfg);
  }
}

TEST(RecognizeWord, WideningCoversWholeGlyph) {
  // One dense template; at threshold 0.99 its 35-column slice is rejected
  // and the first widening (56, clipped to 38) takes the whole glyph.
  auto glyph = random_binary(kGlyphWidth, kGlyphHeight, 0.5, 8);
  for (int r = 0; r < kGlyphHeight; ++r) glyph(r, 0) = glyph(r, kGlyphWidth - 1) = kInk;
  const TemplateDatabase db({make_entry(glyph, Letter(U'ق'), PositionForm::Isolated, "q")});
  SegmenterConfig cfg;
  cfg.match.accept_threshold = 0.99;
  const auto rec = recognize_word(glyph, db, cfg);
  ASSERT_EQ(rec.segments.size(), 1u);
  EXPECT_EQ(rec.segments[0].span, (ColumnSpan{0, kGlyphWidth}));
  EXPECT_EQ(rec.segments[0].widenings, 1);
  ASSERT_TRUE(rec.segments[0].match);
  EXPECT_EQ(rec.segments[0].match->similarity, 1.0);
  EXPECT_EQ(rec.text, "ق");

  cfg.max_widenings = 0;
  const auto fixed = recognize_word(glyph, db, cfg);
  EXPECT_FALSE(fixed.segments.front().recognized());
}

TEST(RecognizeWord, ThreeGlyphWord) {
  const auto& db = stock_db();
  const SegmenterConfig cfg;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomWordOptions opt;
    opt.count = 1;
    opt.min_letters = opt.max_letters = 3;
    opt.min_gap = opt.max_gap = 2;
    opt.seed = seed;
    const auto truth = compose_word(random_word_specs(opt).front(), db);
    const auto rec = recognize_word(truth.image, db, cfg);
    expect_partition(rec, cfg);
    ASSERT_TRUE(rec.segments.front().match);
    EXPECT_EQ(rec.segments.front().match->letter, truth.letters.front()) << "seed " << seed;
  }
}

TEST(RecognizeWord, BlankWord) {
  EXPECT_THROW((void)recognize_word(BinaryImage(60, 50), stock_db(), SegmenterConfig{}), NoContent);
}

TEST(RecognizeWord, EmptyDatabase) {
  EXPECT_THROW((void)recognize_word(BinaryImage(60, 50, kInk), TemplateDatabase{}, SegmenterConfig{}),
               EmptyDatabase);
}

TEST(RecognizeWord, NothingAcceptedGivesQuestionMarks) {
  SegmenterConfig cfg;
  cfg.match.accept_threshold = 1.0;
  const auto word = random_binary(100, 50, 0.5, 4);
  const auto rec = recognize_word(word, stock_db(), cfg);
  EXPECT_EQ(rec.text, "???");
  expect_partition(rec, cfg);
}

TEST(RecognizeWord, InteriorBlankIsSkipped) {
  const auto& db = stock_db();
  BinaryImage word(38 + 80 + 38, 50);
  for (int r = 0; r < 50; ++r) {
    for (int c = 0; c < 38; ++c) {
      word(r, c) = db[0].glyph(r, c);
      word(r, 118 + c) = db[5].glyph(r, c);
    }
  }
  const SegmenterConfig cfg;
  const auto rec = recognize_word(word, db, cfg);
  EXPECT_FALSE(rec.blank_spans.empty());
  expect_partition(rec, cfg);
}

TEST(RecognizeWord, InvariantsOnRandomWords) {
  const auto& db = stock_db();
  RandomWordOptions opt;
  opt.count = 300;
  opt.min_letters = 1;
  opt.max_letters = 6;
  opt.min_gap = -5;
  opt.max_gap = 12;
  opt.jitter_px = 3;
  opt.noise_flip_rate = 0.02;
  opt.seed = 2718;
  const auto specs = random_word_specs(opt);
  SeededRng rng(31);
  for (const auto& spec : specs) {
    const auto truth = compose_word(spec, db);
    SegmenterConfig cfg;
    cfg.base_width = static_cast<int>(rng.between(20, 50));
    cfg.scale_factor = 1.1 + 0.1 * static_cast<double>(rng.below(10));
    cfg.max_widenings = static_cast<int>(rng.below(5));
    cfg.match.accept_threshold = 0.3 + 0.1 * static_cast<double>(rng.below(6));
    const auto rec = recognize_word(truth.image, db, cfg);
    expect_partition(rec, cfg);
    EXPECT_EQ(recognize_word(truth.image, db, cfg).text, rec.text);
  }
}

TEST(RecognizeWord, FixedModeUsesBaseWidthOnly) {
  const auto& db = stock_db();
  SegmenterConfig cfg;
  cfg.max_widenings = 0;
  cfg.match.accept_threshold = 0.9;
  RandomWordOptions opt;
  opt.count = 30;
  const auto corpus = generate_corpus(random_word_specs(opt), db);
  for (const auto& w : corpus) {
    const auto rec = recognize_word(w.image, db, cfg);
    for (const auto& s : rec.segments) {
      EXPECT_EQ(s.widenings, 0);
      EXPECT_EQ(s.span.width(), std::min(35, rec.word_width - s.span.begin));
    }
  }
}

TEST(RecognizeWord, AdaptiveKeepsFixedModeFirstSegment) {
  const auto& db = stock_db();
  RandomWordOptions opt;
  opt.count = 50;
  const auto corpus = generate_corpus(random_word_specs(opt), db);
  for (double t : {0.45, 0.8, 0.9}) {
    SegmenterConfig adaptive;
    adaptive.match.accept_threshold = t;
    SegmenterConfig fixed = adaptive;
    fixed.max_widenings = 0;
    for (const auto& w : corpus) {
      const auto f = recognize_word(w.image, db, fixed);
      const auto a = recognize_word(w.image, db, adaptive);
      if (f.segments.front().recognized()) {
        ASSERT_TRUE(a.segments.front().recognized());
        EXPECT_EQ(a.segments.front().span, f.segments.front().span);
        EXPECT_EQ(a.segments.front().match->entry_index, f.segments.front().match->entry_index);
      }
    }
  }
}

BinaryImage paste_page(const std::vector<BinaryImage>& words_right_to_left, int gap) {
  int w = gap;
  int h = 0;
  for (const auto& word : words_right_to_left) {
    w += word.width() + gap;
    h = std::max(h, word.height());
  }
  BinaryImage page(w, h + 10);
  int right = w - gap;
  for (const auto& word : words_right_to_left) {
    const int left = right - word.width();
    for (int r = 0; r < word.height(); ++r) {
      for (int c = 0; c < word.width(); ++c) page(5 + r, left + c) = word(r, c);
    }
    right = left - gap;
  }
  return page;
}

TEST(RecognizePage, TwoWordsRightToLeft) {
  const auto& db = stock_db();
  const auto corpus = generate_corpus(reference_word_specs(), db);
  const auto page = paste_page({corpus[0].image, corpus[2].image}, 150);
  const SegmenterConfig cfg;
  const auto words = recognize_page(page, db, cfg);
  ASSERT_EQ(words.size(), 2u);
  EXPECT_GT(words[0].box.left, words[1].box.left);
  EXPECT_EQ(words[0].recognition, recognize_word(corpus[0].image, db, cfg));
  EXPECT_EQ(words[1].recognition, recognize_word(corpus[2].image, db, cfg));
}

TEST(RecognizePage, EmptyPage) {
  EXPECT_TRUE(recognize_page(BinaryImage(400, 60), stock_db(), SegmenterConfig{}).empty());
}

TEST(RecognizePage, NoiseWordIsAllUnrecognized) {
  const auto& db = stock_db();
  const auto corpus = generate_corpus(reference_word_specs(), db);
  // Dense ink noise agrees with a template on about its ink share, which
  // is below 0.5 for every stock glyph. At the default 0.45 the densest
  // templates would still accept it, so the page runs at 0.6.
  const auto noise = random_binary(90, 50, 0.95, 12);
  SegmenterConfig cfg;
  cfg.match.accept_threshold = 0.6;
  double best = 0.0;
  for (int w : cfg.width_ladder()) {
    for (int cursor = 0; cursor < noise.width(); ++cursor) {
      const auto seg = next_segment(noise, cursor, w);
      for (const auto& e : db.entries()) best = std::max(best, similarity(seg.content->image, e.glyph));
    }
  }
  ASSERT_LT(best, 0.6);

  const auto page = paste_page({corpus[2].image, noise}, 150);
  const auto words = recognize_page(page, db, cfg);
  ASSERT_EQ(words.size(), 2u);
  EXPECT_EQ(words[0].recognition, recognize_word(corpus[2].image, db, cfg));
  EXPECT_EQ(words[0].recognition.segments.front().match->letter, corpus[2].letters.front());
  EXPECT_EQ(words[1].recognition.text, "???");
}

}  // namespace
}  // namespace qalam

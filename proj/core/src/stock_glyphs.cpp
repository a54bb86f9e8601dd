#include "qalam/stock_glyphs.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <fmt/format.h>

#include "qalam/random.hpp"

namespace qalam {
namespace {

// Design space: x grows to the left-to-right, y grows upwards, baseline at
// y = 0. One unit is roughly one pixel of a 100 ppi scan.
struct Point {
  double x = 0;
  double y = 0;
};

using Path = std::vector<Point>;

struct Shape {
  std::vector<Path> strokes;
  std::vector<Point> dots;

  Shape& add(Path p) {
    strokes.push_back(std::move(p));
    return *this;
  }
  Shape& dot(double x, double y) {
    dots.push_back({x, y});
    return *this;
  }
  Shape& merge(const Shape& other) {
    strokes.insert(strokes.end(), other.strokes.begin(), other.strokes.end());
    dots.insert(dots.end(), other.dots.begin(), other.dots.end());
    return *this;
  }
};

Path arc(double cx, double cy, double r, double deg0, double deg1, double ry = -1) {
  if (ry < 0) ry = r;
  Path p;
  const int steps = std::max(4, static_cast<int>(std::abs(deg1 - deg0) / 8.0));
  for (int i = 0; i <= steps; ++i) {
    const double a = (deg0 + (deg1 - deg0) * i / steps) * std::numbers::pi / 180.0;
    p.push_back({cx + r * std::cos(a), cy + ry * std::sin(a)});
  }
  return p;
}

Path concat(Path a, const Path& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

// Isolated/final shape and the shorter joined shape used for initial and
// medial forms. Letters that never join to the following letter reuse the
// isolated shape for initial and the final shape for medial.
struct LetterDesign {
  Shape isolated;
  Shape joined;
  bool joins_left = true;
};

Shape tooth(double x) { return Shape{}.add({{x, 0}, {x, 7}}); }

Shape cup() { return Shape{}.add({{0, 6}, {1, 1}, {5, 0}, {21, 0}, {25, 1}, {26, 6}}); }

Shape bowl(double right_x) {
  // Open bowl dropping below the baseline to the left of right_x.
  return Shape{}.add(concat(arc(right_x - 10, 1, 10, 0, -180, 9), Path{{right_x - 20, 6}}));
}

Shape teeth_row(double x0) {
  return Shape{}
      .add({{x0, 0}, {x0 + 20, 0}})
      .add({{x0 + 2, 0}, {x0 + 2, 7}})
      .add({{x0 + 10, 0}, {x0 + 10, 7}})
      .add({{x0 + 18, 0}, {x0 + 18, 7}});
}

Shape jeem_head() { return Shape{}.add({{4, 12}, {12, 14}, {22, 14}, {12, 6}, {4, 1}, {0, 0}}); }

Shape jeem_full() {
  return Shape{}.add(
      concat(Path{{8, 12}, {16, 14}, {24, 14}}, arc(14, -6, 13, 60, 300, 14)));
}

Shape sad_loop(double x0) {
  return Shape{}.add(arc(x0 + 11, 6, 11, 0, 360, 6)).add({{x0, 6}, {x0 - 2, 0}, {x0 - 6, 0}});
}

Shape tah_body() {
  return Shape{}.add(arc(16, 6, 11, 0, 360, 6)).add({{9, 8}, {9, 32}}).add({{5, 0}, {0, 0}});
}

Shape ain_head() { return Shape{}.add(arc(12, 10, 6, 40, 310, 6)); }

Shape ain_full() {
  return Shape{}.add(arc(14, 12, 6, 40, 300, 5)).add(
      concat(Path{{16, 6}, {10, 4}}, arc(12, -8, 11, 110, 330, 11)));
}

Shape loop(double cx, double cy, double r) { return Shape{}.add(arc(cx, cy, r, 0, 360)); }

std::vector<LetterDesign> make_designs() {
  std::vector<LetterDesign> d(kAlphabetSize);
  auto at = [&](char32_t cp) -> LetterDesign& {
    const auto& abc = alphabet();
    const auto it = std::find(abc.begin(), abc.end(), Letter(cp));
    return d[static_cast<std::size_t>(it - abc.begin())];
  };

  // alif (isolated with hamza, joined/final variant with a foot)
  at(U'ا').isolated = Shape{}.add({{8, 0}, {8, 30}}).add({{13, 34}, {10, 35}, {12, 37}, {16, 37}});
  at(U'ا').joined = Shape{}.add({{2, 2}, {6, 0}, {8, 2}, {8, 30}});
  at(U'ا').joins_left = false;

  at(U'ب').isolated = cup().dot(13, -7);
  at(U'ب').joined = tooth(10).dot(10, -7);
  at(U'ت').isolated = cup().dot(10, 8).dot(16, 8);
  at(U'ت').joined = tooth(10).dot(7, 12).dot(13, 12);
  at(U'ث').isolated = cup().dot(9, 8).dot(17, 8).dot(13, 14);
  at(U'ث').joined = tooth(10).dot(6, 12).dot(14, 12).dot(10, 18);

  at(U'ج').isolated = jeem_full().dot(15, -6);
  at(U'ج').joined = jeem_head().dot(12, -6);
  at(U'ح').isolated = jeem_full();
  at(U'ح').joined = jeem_head();
  at(U'خ').isolated = jeem_full().dot(16, 21);
  at(U'خ').joined = jeem_head().dot(14, 21);

  const Shape dal = Shape{}.add({{6, 17}, {16, 5}, {15, 1}, {11, 0}, {1, 0}});
  at(U'د').isolated = dal;
  at(U'د').joined = dal;
  at(U'د').joins_left = false;
  at(U'ذ').isolated = Shape(dal).dot(6, 24);
  at(U'ذ').joined = at(U'ذ').isolated;
  at(U'ذ').joins_left = false;

  const Shape raa = Shape{}.add({{16, 9}, {15, 2}, {11, -6}, {5, -11}, {0, -13}});
  at(U'ر').isolated = raa;
  at(U'ر').joined = raa;
  at(U'ر').joins_left = false;
  at(U'ز').isolated = Shape(raa).dot(16, 16);
  at(U'ز').joined = at(U'ز').isolated;
  at(U'ز').joins_left = false;

  at(U'س').isolated = teeth_row(20).merge(bowl(20));
  at(U'س').joined = teeth_row(0);
  at(U'ش').isolated = teeth_row(20).merge(bowl(20)).dot(26, 14).dot(34, 14).dot(30, 20);
  at(U'ش').joined = teeth_row(0).dot(6, 14).dot(14, 14).dot(10, 20);

  at(U'ص').isolated = sad_loop(22).merge(bowl(16));
  at(U'ص').joined = sad_loop(8).merge(tooth(2));
  at(U'ض').isolated = sad_loop(22).merge(bowl(16)).dot(33, 18);
  at(U'ض').joined = sad_loop(8).merge(tooth(2)).dot(19, 18);

  at(U'ط').isolated = tah_body();
  at(U'ط').joined = tah_body();
  at(U'ظ').isolated = tah_body().dot(19, 20);
  at(U'ظ').joined = tah_body().dot(19, 20);

  at(U'ع').isolated = ain_full();
  at(U'ع').joined = ain_head().add({{8, 4}, {4, 0}, {0, 0}});
  at(U'غ').isolated = ain_full().dot(14, 23);
  at(U'غ').joined = ain_head().add({{8, 4}, {4, 0}, {0, 0}}).dot(12, 22);

  at(U'ف').isolated = loop(22, 7, 5).add({{27, 4}, {26, 0}, {2, 0}, {0, 7}}).dot(22, 18);
  at(U'ف').joined = loop(14, 7, 5).add({{19, 4}, {18, 0}, {0, 0}}).dot(14, 18);
  at(U'ق').isolated = loop(22, 7, 5).add(concat(Path{{27, 4}, {24, 0}}, arc(13, 0, 11, 0, -180, 12)))
                         .add({{2, 0}, {2, 6}})
                         .dot(19, 18)
                         .dot(25, 18);
  at(U'ق').joined = loop(14, 7, 5).add({{19, 4}, {18, 0}, {0, 0}}).dot(11, 18).dot(17, 18);

  at(U'ك').isolated = Shape{}
                          .add({{24, 32}, {24, 0}, {2, 0}, {0, 8}})
                          .add({{10, 9}, {14, 12}, {10, 14}, {14, 17}});
  at(U'ك').joined = Shape{}.add({{8, 32}, {20, 24}, {20, 0}, {0, 0}});

  at(U'ل').isolated = Shape{}.add(concat(Path{{22, 32}, {22, 2}}, arc(12, 2, 10, 0, -180, 11)))
                          .add({{2, 2}, {2, 8}});
  at(U'ل').joined = Shape{}.add({{12, 32}, {12, 2}, {9, 0}, {0, 0}});

  at(U'م').isolated = loop(16, 5, 5).add({{11, 4}, {7, -3}, {5, -18}});
  at(U'م').joined = loop(14, 5, 5).add({{9, 1}, {0, 0}});

  at(U'ن').isolated = Shape{}.add(arc(13, 6, 12, 180, 360, 10)).dot(13, 13);
  at(U'ن').joined = tooth(10).dot(10, 13);

  at(U'ه').isolated = loop(12, 9, 9);
  at(U'ه').joined = Shape{}.add(arc(12, 9, 9, 0, 360, 9)).add({{12, 0}, {12, 18}});

  const Shape waw = Shape{}.add(arc(15, 8, 5, -90, 270)).add({{15, 3}, {12, -5}, {6, -11}, {0, -13}});
  at(U'و').isolated = waw;
  at(U'و').joined = waw;
  at(U'و').joins_left = false;

  at(U'ي').isolated = Shape{}
                          .add({{24, 12}, {17, 8}, {19, 3}, {28, 2}, {24, -6}, {14, -9}, {4, -6}, {0, 2}})
                          .dot(11, -15)
                          .dot(18, -15);
  at(U'ي').joined = tooth(10).dot(7, -7).dot(13, -7);
  return d;
}

Shape with_connectors(Shape shape, bool right, bool left) {
  double lo = 1e9, hi = -1e9;
  for (const auto& s : shape.strokes) {
    for (const auto& p : s) {
      lo = std::min(lo, p.x);
      hi = std::max(hi, p.x);
    }
  }
  if (right) shape.add({{hi, 0}, {hi + 8, 0}});
  if (left) shape.add({{lo - 8, 0}, {lo, 0}});
  return shape;
}

Shape form_shape(const LetterDesign& d, PositionForm form) {
  switch (form) {
    case PositionForm::Isolated: return d.isolated;
    case PositionForm::Final: return with_connectors(d.isolated, true, false);
    case PositionForm::Initial:
      return d.joins_left ? with_connectors(d.joined, false, true) : d.isolated;
    case PositionForm::Medial:
      return d.joins_left ? with_connectors(d.joined, true, true)
                          : with_connectors(d.isolated, true, false);
  }
  return d.isolated;
}

struct WriterStyle {
  double pen_radius;  // pixels
  double slant;       // x shear per unit of height
  double x_scale;
  double jitter;      // control-point perturbation, units
};

WriterStyle writer_style(int writer) {
  static constexpr WriterStyle kStyles[] = {
      {1.9, 0.00, 1.00, 0.7},
      {2.5, 0.18, 1.12, 0.9},
      {1.6, -0.10, 0.92, 0.8},
      {2.2, 0.08, 1.05, 1.0},
  };
  return kStyles[writer % 4];
}

RgbImage render(const Shape& shape, const WriterStyle& style, SeededRng& rng) {
  constexpr double kScale = 1.5;  // pixels per design unit
  auto place = [&](Point p) {
    const double jx = (rng.unit() * 2 - 1) * style.jitter;
    const double jy = (rng.unit() * 2 - 1) * style.jitter;
    return Point{(p.x + jx + style.slant * (p.y + jy)) * style.x_scale * kScale,
                 -(p.y + jy) * kScale};
  };

  std::vector<Path> strokes;
  for (const auto& s : shape.strokes) {
    Path placed;
    for (const auto& p : s) placed.push_back(place(p));
    strokes.push_back(std::move(placed));
  }
  std::vector<Point> dots;
  for (const auto& p : shape.dots) dots.push_back(place(p));

  double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
  auto extend = [&](Point p) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  };
  for (const auto& s : strokes) std::for_each(s.begin(), s.end(), extend);
  std::for_each(dots.begin(), dots.end(), extend);

  const double margin = 10 + style.pen_radius * 2;
  const int width = static_cast<int>(std::ceil(max_x - min_x + 2 * margin));
  const int height = static_cast<int>(std::ceil(max_y - min_y + 2 * margin));
  const auto paper = static_cast<std::uint8_t>(228 + rng.below(20));
  RgbImage canvas(width, height, Rgb{paper, paper, static_cast<std::uint8_t>(paper - 6)});
  const Rgb ink{static_cast<std::uint8_t>(20 + rng.below(30)), static_cast<std::uint8_t>(25 + rng.below(30)),
                static_cast<std::uint8_t>(70 + rng.below(40))};

  auto stamp = [&](double cx, double cy, double radius) {
    const double x = cx - min_x + margin;
    const double y = cy - min_y + margin;
    const int r0 = static_cast<int>(std::floor(y - radius));
    const int r1 = static_cast<int>(std::ceil(y + radius));
    const int c0 = static_cast<int>(std::floor(x - radius));
    const int c1 = static_cast<int>(std::ceil(x + radius));
    for (int r = std::max(0, r0); r <= std::min(height - 1, r1); ++r) {
      for (int c = std::max(0, c0); c <= std::min(width - 1, c1); ++c) {
        const double dx = c + 0.5 - x;
        const double dy = r + 0.5 - y;
        if (dx * dx + dy * dy <= radius * radius) canvas(r, c) = ink;
      }
    }
  };

  for (const auto& s : strokes) {
    if (s.size() == 1) stamp(s[0].x, s[0].y, style.pen_radius);
    for (std::size_t i = 1; i < s.size(); ++i) {
      const double len = std::hypot(s[i].x - s[i - 1].x, s[i].y - s[i - 1].y);
      const int steps = std::max(1, static_cast<int>(std::ceil(len * 2)));
      for (int k = 0; k <= steps; ++k) {
        const double t = static_cast<double>(k) / steps;
        stamp(s[i - 1].x + t * (s[i].x - s[i - 1].x), s[i - 1].y + t * (s[i].y - s[i - 1].y),
              style.pen_radius);
      }
    }
  }
  for (const auto& p : dots) stamp(p.x, p.y, style.pen_radius * 1.5);
  return canvas;
}

}  // namespace

std::vector<LabeledScan> stock_glyph_scans(const StockGlyphOptions& options) {
  if (options.writers < 1) throw InvalidArgument("stock glyphs: need at least one writer");
  const auto designs = make_designs();
  std::vector<LabeledScan> scans;
  for (int w = 0; w < options.writers; ++w) {
    const auto style = writer_style(w);
    for (std::size_t i = 0; i < kAlphabetSize; ++i) {
      const Letter letter = alphabet()[i];
      for (auto form : kAllForms) {
        SeededRng rng(options.seed ^ (static_cast<std::uint64_t>(w) << 40) ^
                      (static_cast<std::uint64_t>(letter.codepoint()) << 8) ^
                      static_cast<std::uint64_t>(form));
        auto image = render(form_shape(designs[i], form), style, rng);
        scans.push_back(LabeledScan{
            std::move(image), letter, form,
            fmt::format("w{}_{:04X}_{}", w, static_cast<std::uint32_t>(letter.codepoint()),
                        to_string(form))});
      }
    }
  }
  return scans;
}

TemplateDatabase stock_database(const StockGlyphOptions& options) {
  std::vector<TemplateEntry> entries;
  for (const auto& scan : stock_glyph_scans(options)) {
    entries.push_back(ingest_template(scan.image, scan.letter, scan.form, scan.name));
  }
  return TemplateDatabase(std::move(entries));
}

}  // namespace qalam

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qalam/image.hpp"
#include "qalam/letters.hpp"
#include "qalam/template_db.hpp"

namespace qalam {

/// A raster standing in for one scanned glyph, with its label.
struct LabeledScan {
  RgbImage image;
  Letter letter;
  PositionForm form = PositionForm::Isolated;
  std::string name;  // e.g. "w0_0628_initial"
};

struct StockGlyphOptions {
  int writers = 2;
  std::uint64_t seed = 2024;
};

/// Pen-stroke renderings of all 28 letters in their four position forms,
/// one set per simulated writer. Each writer has its own pen width, slant
/// and aspect, and every control point is perturbed per glyph. Scans are
/// RGB with an off-white paper tone and dark ink so that ingestion has to
/// binarize them. Deterministic given the options.
[[nodiscard]] std::vector<LabeledScan> stock_glyph_scans(const StockGlyphOptions& options = {});

/// stock_glyph_scans run through ingest_template, in scan order.
[[nodiscard]] TemplateDatabase stock_database(const StockGlyphOptions& options = {});

}  // namespace qalam

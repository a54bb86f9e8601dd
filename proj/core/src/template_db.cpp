#include "qalam/template_db.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <utility>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "qalam/raster_io.hpp"

namespace qalam {

GlyphBits pack_glyph(const BinaryImage& glyph) {
  if (glyph.width() != kGlyphWidth || glyph.height() != kGlyphHeight) {
    throw InvalidImage(fmt::format("glyph must be {}x{}, got {}x{}", kGlyphWidth, kGlyphHeight,
                                   glyph.width(), glyph.height()));
  }
  GlyphBits bits;
  auto px = glyph.pixels();
  for (std::size_t i = 0; i < kGlyphPixels; ++i) {
    if (px[i] != kPaper) bits.set(i);
  }
  return bits;
}

TemplateEntry make_entry(BinaryImage glyph, Letter letter, PositionForm form,
                         std::string source_id) {
  if (glyph.width() != kGlyphWidth || glyph.height() != kGlyphHeight) {
    throw InvalidImage(fmt::format("glyph must be {}x{}, got {}x{}", kGlyphWidth, kGlyphHeight,
                                   glyph.width(), glyph.height()));
  }
  if (ink_count(glyph) == 0) throw NoContent("glyph has no ink");
  const auto category = width_category(letter);
  return TemplateEntry{std::move(glyph), letter, form, category, std::move(source_id)};
}

TemplateDatabase::TemplateDatabase(std::vector<TemplateEntry> entries, DatabaseManifest manifest)
    : entries_(std::move(entries)), manifest_(manifest) {
  packed_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    const auto& e = entries_[i];
    try {
      if (ink_count(e.glyph) == 0) throw NoContent("glyph has no ink");
      if (width_category(e.letter) != e.category) {
        throw InvalidArgument(fmt::format("category {} does not match letter {}",
                                          to_string(e.category), e.letter.label()));
      }
      packed_.push_back(pack_glyph(e.glyph));
    } catch (const Error& err) {
      throw InvalidArgument(fmt::format("template entry {}: {}", i, err.what()));
    }
  }
}

std::vector<std::size_t> TemplateDatabase::indices_of(Letter letter) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].letter == letter) out.push_back(i);
  }
  return out;
}

std::vector<Letter> TemplateDatabase::letters() const {
  std::vector<Letter> out;
  for (auto l : alphabet()) {
    if (std::any_of(entries_.begin(), entries_.end(),
                    [l](const TemplateEntry& e) { return e.letter == l; })) {
      out.push_back(l);
    }
  }
  return out;
}

TemplateEntry ingest_template(const GrayImage& raw, Letter letter, PositionForm form,
                              std::string source_id, const BinarizePolicy& policy) {
  const auto binary = binarize(raw, policy);
  auto crop = crop_to_content(binary);
  return make_entry(resize_nearest(crop.image, kGlyphWidth, kGlyphHeight), letter, form,
                    std::move(source_id));
}

TemplateEntry ingest_template(const RgbImage& raw, Letter letter, PositionForm form,
                              std::string source_id, const BinarizePolicy& policy) {
  return ingest_template(to_grayscale(raw), letter, form, std::move(source_id), policy);
}

void save_db(const TemplateDatabase& db, const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const fs::path glyph_dir = dir / "glyphs";
  std::error_code ec;
  fs::create_directories(glyph_dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", glyph_dir.string(), ec.message()));

  std::map<std::pair<char32_t, PositionForm>, int> serial;
  nlohmann::ordered_json entries = nlohmann::ordered_json::array();
  for (const auto& e : db.entries()) {
    const int n = serial[{e.letter.codepoint(), e.form}]++;
    const auto file = fmt::format("glyphs/{:04X}_{}_{}.png",
                                  static_cast<std::uint32_t>(e.letter.codepoint()),
                                  to_string(e.form), n);
    write_png(dir / file, e.glyph);
    nlohmann::ordered_json item;
    item["file"] = file;
    item["letter"] = e.letter.label();
    item["form"] = to_string(e.form);
    item["category"] = to_string(e.category);
    item["source_id"] = e.source_id;
    entries.push_back(std::move(item));
  }

  nlohmann::ordered_json manifest;
  manifest["version"] = db.manifest().version;
  manifest["resolution_ppi"] = db.manifest().resolution_ppi;
  manifest["entries"] = std::move(entries);

  std::ofstream out(dir / "manifest.json");
  if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
  out << manifest.dump(2) << '\n';
  if (!out) throw IoError("cannot write " + (dir / "manifest.json").string());
}

TemplateDatabase load_db(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  std::ifstream in(manifest_path);
  if (!in) throw IoError("cannot open " + manifest_path.string());

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw CorruptDatabase(fmt::format("{}: {}", manifest_path.string(), e.what()));
  }

  DatabaseManifest manifest;
  try {
    manifest.version = doc.at("version").get<int>();
    manifest.resolution_ppi = doc.at("resolution_ppi").get<int>();
    if (!doc.at("entries").is_array()) throw CorruptDatabase("entries is not an array");
  } catch (const nlohmann::json::exception& e) {
    throw CorruptDatabase(fmt::format("{}: {}", manifest_path.string(), e.what()));
  }
  if (manifest.version < 1 || manifest.resolution_ppi < 1) {
    throw CorruptDatabase(manifest_path.string() + ": version and resolution_ppi must be positive");
  }

  std::vector<TemplateEntry> entries;
  const auto& items = doc.at("entries");
  entries.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    try {
      const auto& item = items[i];
      const auto file = item.at("file").get<std::string>();
      const auto letter = parse_letter(item.at("letter").get<std::string>());
      const auto form = parse_position_form(item.at("form").get<std::string>());
      const auto category = parse_width_category(item.at("category").get<std::string>());
      auto glyph = read_binary(dir / file, FixedThreshold{128});
      auto entry = make_entry(std::move(glyph), letter, form, item.at("source_id").get<std::string>());
      if (entry.category != category) {
        throw CorruptDatabase(fmt::format("category '{}' contradicts letter {} ({})",
                                          to_string(category), letter.label(),
                                          to_string(entry.category)));
      }
      entries.push_back(std::move(entry));
    } catch (const nlohmann::json::exception& e) {
      throw CorruptDatabase(fmt::format("entry {}: {}", i, e.what()));
    } catch (const Error& e) {
      throw CorruptDatabase(fmt::format("entry {}: {}", i, e.what()));
    }
  }
  return TemplateDatabase(std::move(entries), manifest);
}

}  // namespace qalam

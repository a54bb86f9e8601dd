#include "qalam_cli/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI/CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "qalam/error.hpp"
#include "qalam/eval.hpp"
#include "qalam/raster_io.hpp"
#include "qalam/recognizer.hpp"
#include "qalam/stock_glyphs.hpp"
#include "qalam/synth.hpp"
#include "qalam/template_db.hpp"

namespace qalam::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct MatchFlags {
  int base_width = kDefaultBaseWidth;
  double scale_factor = kDefaultScaleFactor;
  int max_widenings = kDefaultMaxWidenings;
  double threshold = kDefaultAcceptThreshold;
  std::optional<double> upper_threshold;
  std::string measure = "agreement";
  unsigned threads = 0;
  bool json = false;

  void attach(CLI::App& app) {
    app.add_option("--base-width", base_width, "Base segment width in pixels")
        ->capture_default_str();
    app.add_option("--scale-factor", scale_factor, "Widening ratio per retry")
        ->capture_default_str();
    app.add_option("--max-widenings", max_widenings, "Retries per segment; 0 = fixed width")
        ->capture_default_str();
    app.add_option("--threshold", threshold, "Minimum similarity to accept a match")
        ->capture_default_str();
    app.add_option("--upper-threshold", upper_threshold, "Reject matches above this similarity");
    app.add_option("--measure", measure, "Similarity measure")
        ->check(CLI::IsMember({"agreement", "overlap"}))
        ->capture_default_str();
    app.add_option("--threads", threads, "Worker threads, 0 = hardware concurrency")
        ->capture_default_str();
    app.add_flag("--json", json, "Machine-readable output");
  }

  [[nodiscard]] SegmenterConfig config() const {
    SegmenterConfig cfg;
    cfg.base_width = base_width;
    cfg.scale_factor = scale_factor;
    cfg.max_widenings = max_widenings;
    cfg.match.accept_threshold = threshold;
    cfg.match.upper_threshold = upper_threshold;
    cfg.match.measure = parse_similarity_measure(measure);
    cfg.validate();
    return cfg;
  }
};

std::string trim(std::string_view s) {
  constexpr std::string_view ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write " + path.string());
  f << text;
}

// ---- build-db ---------------------------------------------------------------

struct LabelRow {
  std::size_t line = 0;
  std::string file;
  std::string letter;
  std::string form;
};

std::vector<LabelRow> read_labels(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open labels file " + path.string());
  std::vector<LabelRow> rows;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (n == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto fields = split(t, ',');
    if (n == 1 && fields.size() == 3 && fields[0] == "file") continue;
    if (fields.size() != 3) {
      throw InvalidArgument(fmt::format("{}:{}: expected file,letter,form", path.string(), n));
    }
    rows.push_back({n, std::move(fields[0]), std::move(fields[1]), std::move(fields[2])});
  }
  return rows;
}

int cmd_build_db(const fs::path& input_dir, const fs::path& labels, const fs::path& out_dir,
                 std::ostream& out, std::ostream& err) {
  const auto rows = read_labels(labels);
  std::vector<TemplateEntry> entries;
  std::size_t failed = 0;
  for (const auto& row : rows) {
    try {
      const auto letter = parse_letter(row.letter);
      const auto form = parse_position_form(row.form);
      const auto path = input_dir / row.file;
      if (!fs::exists(path)) throw IoError("file not found");
      entries.push_back(
          ingest_template(read_rgb(path), letter, form, fs::path(row.file).stem().string()));
    } catch (const Error& e) {
      ++failed;
      fmt::print(err, "{}: {}\n", row.file, e.what());
    }
  }
  if (entries.empty()) {
    fmt::print(err, "error: no templates ingested\n");
    return 1;
  }
  const TemplateDatabase db(std::move(entries));
  save_db(db, out_dir);
  fmt::print(out, "{} entries written to {}\n", db.size(), out_dir.string());
  if (failed > 0) {
    fmt::print(err, "partial: {} of {} files failed\n", failed, rows.size());
    return 2;
  }
  return 0;
}

// ---- recognize --------------------------------------------------------------

ordered_json span_json(const ColumnSpan& s) { return ordered_json::array({s.begin, s.end}); }

ordered_json recognition_json(const PageWord& word) {
  ordered_json j;
  j["box"] = {{"left", word.box.left},
              {"top", word.box.top},
              {"width", word.box.width},
              {"height", word.box.height}};
  const auto& rec = word.recognition;
  j["word_width"] = rec.word_width;
  j["text"] = rec.text;
  ordered_json segs = ordered_json::array();
  for (const auto& s : rec.segments) {
    ordered_json sj;
    sj["span"] = span_json(s.span);
    sj["widenings"] = s.widenings;
    if (s.match) {
      sj["letter"] = s.match->letter.utf8();
      sj["form"] = std::string(to_string(s.match->form));
      sj["similarity"] = s.match->similarity;
      sj["entry"] = s.match->entry_index;
    } else {
      sj["letter"] = nullptr;
    }
    segs.push_back(std::move(sj));
  }
  j["segments"] = std::move(segs);
  ordered_json blanks = ordered_json::array();
  for (const auto& b : rec.blank_spans) blanks.push_back(span_json(b));
  j["blank_spans"] = std::move(blanks);
  return j;
}

int cmd_recognize(const fs::path& image, const fs::path& db_dir, const MatchFlags& flags,
                  int gap, std::ostream& out) {
  const auto cfg = flags.config();
  const auto db = load_db(db_dir);
  const auto page = read_binary(image);
  const auto words = recognize_page(page, db, cfg, gap);
  if (flags.json) {
    ordered_json arr = ordered_json::array();
    for (const auto& w : words) arr.push_back(recognition_json(w));
    out << arr.dump(2) << '\n';
  } else {
    for (const auto& w : words) out << w.recognition.text << '\n';
  }
  return 0;
}

// ---- synth ------------------------------------------------------------------

struct SynthFlags {
  std::optional<std::string> spec_file;
  int letter_gap = 2;
  int jitter = 0;
  double noise = 0.0;
  std::uint64_t seed = 1;
  std::size_t random = 0;
  int min_letters = 3;
  int max_letters = 5;
  int min_gap = 0;
  int max_gap = 4;
};

int cmd_synth(const fs::path& db_dir, const fs::path& out_dir, const SynthFlags& f,
              std::ostream& out) {
  const auto db = load_db(db_dir);
  std::vector<SynthSpec> specs;
  if (f.spec_file) {
    std::ifstream in(*f.spec_file, std::ios::binary);
    if (!in) throw IoError("cannot open spec file " + *f.spec_file);
    std::stringstream ss;
    ss << in.rdbuf();
    specs = specs_from_json(ss.str());
  } else {
    specs = reference_word_specs(f.letter_gap, f.seed);
    for (auto& s : specs) {
      s.jitter_px = f.jitter;
      s.noise_flip_rate = f.noise;
    }
  }
  if (f.random > 0) {
    RandomWordOptions opt;
    opt.count = f.random;
    opt.min_letters = f.min_letters;
    opt.max_letters = f.max_letters;
    opt.min_gap = f.min_gap;
    opt.max_gap = f.max_gap;
    opt.jitter_px = f.jitter;
    opt.noise_flip_rate = f.noise;
    opt.seed = f.seed;
    const auto extra = random_word_specs(opt);
    specs.insert(specs.end(), extra.begin(), extra.end());
  }
  const auto corpus = generate_corpus(specs, db);
  save_corpus(corpus, out_dir);
  fmt::print(out, "{} words written to {}\n", corpus.size(), out_dir.string());
  return 0;
}

// ---- eval / sweep -----------------------------------------------------------

int cmd_eval(const fs::path& corpus_dir, const fs::path& db_dir, const MatchFlags& flags,
             const std::optional<std::string>& out_file, std::ostream& out) {
  const auto cfg = flags.config();
  const auto db = load_db(db_dir);
  const auto corpus = load_corpus(corpus_dir);
  const auto report = evaluate(corpus, db, cfg, flags.threads);
  const auto json = report_json(report);
  if (out_file) write_text(*out_file, json);
  if (flags.json) {
    out << json;
  } else {
    fmt::print(out, "characters: {}\n", report.total_chars);
    fmt::print(out, "correct: {}\nwrong: {}\nunrecognized: {}\n", report.recognized_correct,
               report.recognized_wrong, report.unrecognized);
    fmt::print(out, "recognition_rate: {:.4f}\nfar: {:.4f}\n", report.recognition_rate,
               report.far);
  }
  return 0;
}

int cmd_sweep(const fs::path& corpus_dir, const fs::path& db_dir, const MatchFlags& flags,
              const std::string& factors_text, const std::string& thresholds_text,
              const std::optional<std::string>& out_file, std::ostream& out) {
  const auto cfg = flags.config();
  std::vector<FactorSetting> factors;
  for (const auto& f : split(factors_text, ',')) {
    if (!f.empty()) factors.push_back(FactorSetting::parse(f));
  }
  std::vector<double> thresholds;
  for (const auto& t : split(thresholds_text, ',')) {
    if (t.empty()) continue;
    try {
      std::size_t used = 0;
      thresholds.push_back(std::stod(t, &used));
      if (used != t.size()) throw std::invalid_argument(t);
    } catch (const std::exception&) {
      throw InvalidArgument(fmt::format("bad threshold '{}'", t));
    }
  }
  const auto db = load_db(db_dir);
  const auto corpus = load_corpus(corpus_dir);
  const auto rows = sweep(corpus, db, cfg, factors, thresholds, flags.threads);
  const auto csv = sweep_csv(rows);
  if (out_file) {
    write_text(*out_file, csv);
    fmt::print(out, "{} rows written to {}\n", rows.size(), *out_file);
  } else {
    out << csv;
  }
  return 0;
}

// ---- glyph-sheet ------------------------------------------------------------

int cmd_glyph_sheet(const fs::path& out_dir, int writers, std::uint64_t seed, std::ostream& out) {
  StockGlyphOptions opt;
  opt.writers = writers;
  opt.seed = seed;
  const auto scans = stock_glyph_scans(opt);
  fs::create_directories(out_dir);
  std::string labels = "file,letter,form\n";
  for (const auto& scan : scans) {
    const auto file = scan.name + ".png";
    write_png(out_dir / file, scan.image);
    labels += fmt::format("{},{},{}\n", file, scan.letter.label(), to_string(scan.form));
  }
  write_text(out_dir / "labels.csv", labels);
  fmt::print(out, "{} scans written to {}\n", scans.size(), out_dir.string());
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Handwritten Arabic letter recognition by template matching", "qalam"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "0.3.0");

  std::string input_dir, labels, out_dir, image, db_dir, corpus_dir;
  MatchFlags match;
  int gap = kDefaultWordGap;
  SynthFlags synth;
  std::optional<std::string> out_file;
  std::string factors = "fixed,1.3,1.6";
  std::string thresholds = "0.45";
  int writers = 2;
  std::uint64_t sheet_seed = 2024;

  auto* build = app.add_subcommand("build-db", "Ingest labeled glyph scans into a template db");
  build->add_option("input_dir", input_dir, "Directory holding the scans")->required();
  build->add_option("labels", labels, "CSV file,letter,form")->required();
  build->add_option("out_dir", out_dir, "Database directory to write")->required();

  auto* recognize = app.add_subcommand("recognize", "Recognize the words on a page image");
  recognize->add_option("image", image, "Page or word image (PNG/PNM)")->required();
  recognize->add_option("db", db_dir, "Template database directory")->required();
  recognize->add_option("--gap", gap, "Blank columns that separate words")->capture_default_str();
  match.attach(*recognize);

  auto* synth_cmd = app.add_subcommand("synth", "Compose a ground-truth word corpus");
  synth_cmd->add_option("db", db_dir, "Template database directory")->required();
  synth_cmd->add_option("out_dir", out_dir, "Corpus directory to write")->required();
  synth_cmd->add_option("--spec", synth.spec_file, "JSON word specs (default: the three test words)");
  synth_cmd->add_option("--letter-gap", synth.letter_gap, "Gap between glyphs, negative overlaps")
      ->capture_default_str();
  synth_cmd->add_option("--jitter", synth.jitter, "Vertical jitter in pixels")->capture_default_str();
  synth_cmd->add_option("--noise", synth.noise, "Pixel flip probability")->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Seed")->capture_default_str();
  synth_cmd->add_option("--random", synth.random, "Append N seeded random words")
      ->capture_default_str();
  synth_cmd->add_option("--min-letters", synth.min_letters)->capture_default_str();
  synth_cmd->add_option("--max-letters", synth.max_letters)->capture_default_str();
  synth_cmd->add_option("--min-gap", synth.min_gap, "Random words: smallest letter gap")
      ->capture_default_str();
  synth_cmd->add_option("--max-gap", synth.max_gap, "Random words: largest letter gap")
      ->capture_default_str();

  auto* eval_cmd = app.add_subcommand("eval", "Score recognition against a corpus");
  eval_cmd->add_option("corpus", corpus_dir, "Corpus directory")->required();
  eval_cmd->add_option("db", db_dir, "Template database directory")->required();
  eval_cmd->add_option("--out", out_file, "Also write the JSON report here");
  match.attach(*eval_cmd);

  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a factor x threshold grid");
  sweep_cmd->add_option("corpus", corpus_dir, "Corpus directory")->required();
  sweep_cmd->add_option("db", db_dir, "Template database directory")->required();
  sweep_cmd->add_option("--factors", factors, "Comma list; 'fixed' = no widening")
      ->capture_default_str();
  sweep_cmd->add_option("--thresholds", thresholds, "Comma list")->capture_default_str();
  sweep_cmd->add_option("--out", out_file, "CSV file (default: stdout)");
  match.attach(*sweep_cmd);

  auto* sheet = app.add_subcommand("glyph-sheet", "Write the built-in glyph scans and labels.csv");
  sheet->add_option("out_dir", out_dir, "Directory to write")->required();
  sheet->add_option("--writers", writers, "Simulated writers")->capture_default_str();
  sheet->add_option("--seed", sheet_seed, "Seed")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (build->parsed()) return cmd_build_db(input_dir, labels, out_dir, out, err);
    if (recognize->parsed()) return cmd_recognize(image, db_dir, match, gap, out);
    if (synth_cmd->parsed()) return cmd_synth(db_dir, out_dir, synth, out);
    if (eval_cmd->parsed()) return cmd_eval(corpus_dir, db_dir, match, out_file, out);
    if (sweep_cmd->parsed()) {
      return cmd_sweep(corpus_dir, db_dir, match, factors, thresholds, out_file, out);
    }
    if (sheet->parsed()) return cmd_glyph_sheet(out_dir, writers, sheet_seed, out);
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return 1;
  }
  return 1;
}

}  // namespace qalam::cli

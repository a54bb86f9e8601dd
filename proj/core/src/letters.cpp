#include "qalam/letters.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

#include <fmt/format.h>

#include "qalam/error.hpp"

namespace qalam {
namespace {

struct LetterInfo {
  char32_t codepoint;
  std::string_view name;
  WidthCategory category;
};

constexpr std::array<LetterInfo, kAlphabetSize> kLetters{{
    {U'ا', "alif", WidthCategory::Small},
    {U'ب', "baa", WidthCategory::Small},
    {U'ت', "taa", WidthCategory::Small},
    {U'ث', "thaa", WidthCategory::Small},
    {U'ج', "jeem", WidthCategory::Medium},
    {U'ح', "haa", WidthCategory::Medium},
    {U'خ', "khaa", WidthCategory::Medium},
    {U'د', "dal", WidthCategory::Medium},
    {U'ذ', "thal", WidthCategory::Medium},
    {U'ر', "raa", WidthCategory::Medium},
    {U'ز', "zay", WidthCategory::Medium},
    {U'س', "seen", WidthCategory::Medium},
    {U'ش', "sheen", WidthCategory::Medium},
    {U'ص', "sad", WidthCategory::Large},
    {U'ض', "dad", WidthCategory::Large},
    {U'ط', "tah", WidthCategory::Large},
    {U'ظ', "zah", WidthCategory::Large},
    {U'ع', "ain", WidthCategory::Large},
    {U'غ', "ghain", WidthCategory::Large},
    {U'ف', "faa", WidthCategory::Large},
    {U'ق', "qaf", WidthCategory::Large},
    {U'ك', "kaf", WidthCategory::Large},
    {U'ل', "lam", WidthCategory::Large},
    {U'م', "meem", WidthCategory::Large},
    {U'ن', "noon", WidthCategory::Large},
    {U'ه', "heh", WidthCategory::Large},
    {U'و', "waw", WidthCategory::Large},
    {U'ي', "yaa", WidthCategory::Large},
}};

constexpr char32_t kTatweel = U'ـ';

const LetterInfo* find_info(char32_t cp) noexcept {
  auto it = std::find_if(kLetters.begin(), kLetters.end(),
                         [cp](const LetterInfo& info) { return info.codepoint == cp; });
  return it == kLetters.end() ? nullptr : &*it;
}

std::string lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string Letter::utf8() const { return utf8::encode(codepoint_); }

std::string Letter::label() const {
  return fmt::format("U+{:04X}", static_cast<std::uint32_t>(codepoint_));
}

std::string_view Letter::name() const {
  const auto* info = find_info(codepoint_);
  return info ? info->name : std::string_view("?");
}

const std::array<Letter, kAlphabetSize>& alphabet() {
  static const auto letters = [] {
    std::array<Letter, kAlphabetSize> out;
    for (std::size_t i = 0; i < kAlphabetSize; ++i) out[i] = Letter(kLetters[i].codepoint);
    return out;
  }();
  return letters;
}

std::string_view to_string(PositionForm form) {
  switch (form) {
    case PositionForm::Isolated: return "isolated";
    case PositionForm::Initial: return "initial";
    case PositionForm::Medial: return "medial";
    case PositionForm::Final: return "final";
  }
  return "?";
}

std::string_view to_string(WidthCategory category) {
  switch (category) {
    case WidthCategory::Small: return "small";
    case WidthCategory::Medium: return "medium";
    case WidthCategory::Large: return "large";
  }
  return "?";
}

PositionForm parse_position_form(std::string_view text) {
  const auto key = lower(text);
  for (auto form : kAllForms) {
    if (key == to_string(form)) return form;
  }
  throw InvalidArgument(fmt::format("unknown position form '{}'", text));
}

WidthCategory parse_width_category(std::string_view text) {
  const auto key = lower(text);
  for (auto c : {WidthCategory::Small, WidthCategory::Medium, WidthCategory::Large}) {
    if (key == to_string(c)) return c;
  }
  throw InvalidArgument(fmt::format("unknown width category '{}'", text));
}

WidthCategory width_category(Letter letter) {
  const auto* info = find_info(letter.codepoint());
  if (!info) throw UnknownLetter(fmt::format("{} is not an alphabet letter", letter.label()));
  return info->category;
}

bool is_alphabet_letter(char32_t codepoint) noexcept { return find_info(codepoint) != nullptr; }

Letter canonical_letter(char32_t codepoint) {
  switch (codepoint) {
    case U'آ':  // alif madda
    case U'أ':  // hamza above
    case U'إ':  // hamza below
    case U'ٱ':  // wasla
      codepoint = U'ا';
      break;
    case U'ة':  // taa marbuta
      codepoint = U'ت';
      break;
    case U'ى':  // alif maqsura
      codepoint = U'ي';
      break;
    default:
      break;
  }
  if (!is_alphabet_letter(codepoint)) {
    throw UnknownLetter(fmt::format("U+{:04X} is not an alphabet letter",
                                    static_cast<std::uint32_t>(codepoint)));
  }
  return Letter(codepoint);
}

Letter parse_letter(std::string_view text) {
  if (text.size() > 2 && (text[0] == 'U' || text[0] == 'u') && text[1] == '+') {
    std::uint32_t value = 0;
    const auto* first = text.data() + 2;
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value, 16);
    if (ec != std::errc() || ptr != last) {
      throw UnknownLetter(fmt::format("malformed code point '{}'", text));
    }
    return canonical_letter(static_cast<char32_t>(value));
  }
  std::u32string cps;
  try {
    cps = utf8::decode(text);
  } catch (const InvalidArgument&) {
    throw UnknownLetter("letter is not valid UTF-8");
  }
  while (!cps.empty() && cps.back() == kTatweel) cps.pop_back();
  if (cps.size() != 1) throw UnknownLetter(fmt::format("'{}' is not a single letter", text));
  return canonical_letter(cps.front());
}

std::vector<Letter> parse_word(std::string_view text) {
  std::u32string cps;
  try {
    cps = utf8::decode(text);
  } catch (const InvalidArgument&) {
    throw UnknownLetter("word is not valid UTF-8");
  }
  std::vector<Letter> letters;
  for (char32_t cp : cps) {
    if (cp == kTatweel || cp == U' ' || cp == U'\t' || cp == U'‌' || cp == U'‍') {
      continue;
    }
    letters.push_back(canonical_letter(cp));
  }
  return letters;
}

std::string to_utf8(const std::vector<Letter>& letters) {
  std::string out;
  for (auto l : letters) out += l.utf8();
  return out;
}

namespace utf8 {

std::u32string decode(std::string_view text) {
  std::u32string out;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto lead = static_cast<unsigned char>(text[i]);
    int extra = 0;
    char32_t cp = 0;
    if (lead < 0x80) {
      cp = lead;
    } else if ((lead & 0xE0) == 0xC0) {
      extra = 1;
      cp = lead & 0x1F;
    } else if ((lead & 0xF0) == 0xE0) {
      extra = 2;
      cp = lead & 0x0F;
    } else if ((lead & 0xF8) == 0xF0) {
      extra = 3;
      cp = lead & 0x07;
    } else {
      throw InvalidArgument("invalid UTF-8 lead byte");
    }
    if (i + static_cast<std::size_t>(extra) >= text.size()) {
      throw InvalidArgument("truncated UTF-8 sequence");
    }
    for (int k = 1; k <= extra; ++k) {
      const auto cont = static_cast<unsigned char>(text[i + static_cast<std::size_t>(k)]);
      if ((cont & 0xC0) != 0x80) throw InvalidArgument("invalid UTF-8 continuation byte");
      cp = (cp << 6) | (cont & 0x3F);
    }
    static constexpr char32_t kMinForLength[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLength[extra] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw InvalidArgument("invalid UTF-8 code point");
    }
    out.push_back(cp);
    i += static_cast<std::size_t>(extra) + 1;
  }
  return out;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out += static_cast<char>(cp);
  } else if (cp < 0x800) {
    out += static_cast<char>(0xC0 | (cp >> 6));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else if (cp < 0x10000) {
    out += static_cast<char>(0xE0 | (cp >> 12));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  } else {
    out += static_cast<char>(0xF0 | (cp >> 18));
    out += static_cast<char>(0x80 | ((cp >> 12) & 0x3F));
    out += static_cast<char>(0x80 | ((cp >> 6) & 0x3F));
    out += static_cast<char>(0x80 | (cp & 0x3F));
  }
  return out;
}

}  // namespace utf8
}  // namespace qalam

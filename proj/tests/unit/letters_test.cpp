#include <gtest/gtest.h>

#include <set>

#include "qalam/error.hpp"
#include "qalam/letters.hpp"

namespace qalam {
namespace {

Letter L(const char* utf8) { return parse_letter(utf8); }

TEST(Letters, AlphabetHas28DistinctLetters) {
  std::set<char32_t> seen;
  for (auto l : alphabet()) {
    EXPECT_TRUE(is_alphabet_letter(l.codepoint()));
    seen.insert(l.codepoint());
  }
  EXPECT_EQ(seen.size(), 28u);
}

TEST(Letters, CategoriesOfListedExamples) {
  for (const char* s : {"ا", "ب", "ت", "ث"}) EXPECT_EQ(width_category(L(s)), WidthCategory::Small) << s;
  for (const char* s : {"ج", "د", "ذ", "ر", "ز", "س", "ش"}) {
    EXPECT_EQ(width_category(L(s)), WidthCategory::Medium) << s;
  }
  for (const char* s : {"ع", "ف", "ق", "ك", "ل", "م", "ن", "ه", "و", "ي"}) {
    EXPECT_EQ(width_category(L(s)), WidthCategory::Large) << s;
  }
}

TEST(Letters, CategoryIsTotal) {
  for (auto l : alphabet()) EXPECT_NO_THROW((void)width_category(l)) << l.label();
  EXPECT_THROW((void)width_category(Letter(U'A')), UnknownLetter);
}

TEST(Letters, VariantsFoldToBaseLetters) {
  EXPECT_EQ(canonical_letter(U'أ'), L("ا"));
  EXPECT_EQ(canonical_letter(U'إ'), L("ا"));
  EXPECT_EQ(canonical_letter(U'آ'), L("ا"));
  EXPECT_EQ(canonical_letter(U'ة'), L("ت"));
  EXPECT_EQ(canonical_letter(U'ى'), L("ي"));
  EXPECT_THROW((void)canonical_letter(U'x'), UnknownLetter);
}

TEST(Letters, ParseLetterForms) {
  EXPECT_EQ(parse_letter("U+0627"), Letter(U'ا'));
  EXPECT_EQ(parse_letter("u+0645"), Letter(U'م'));
  EXPECT_EQ(parse_letter("م"), Letter(U'م'));
  EXPECT_THROW((void)parse_letter("مس"), UnknownLetter);
  EXPECT_THROW((void)parse_letter(""), UnknownLetter);
  EXPECT_THROW((void)parse_letter("U+00ZZ"), UnknownLetter);
}

TEST(Letters, ReferenceWordLengths) {
  EXPECT_EQ(parse_word("شمس").size(), 3u);
  EXPECT_EQ(parse_word("جامعة").size(), 5u);
  EXPECT_EQ(parse_word("زرع").size(), 3u);
  EXPECT_EQ(parse_word("جامعة").back(), L("ت"));
}

TEST(Letters, ParseWordSkipsTatweelAndSpaces) {
  EXPECT_EQ(parse_word("شـمـس"), parse_word("شمس"));
  EXPECT_EQ(parse_word(" ش م س "), parse_word("شمس"));
  EXPECT_THROW((void)parse_word("abc"), UnknownLetter);
}

TEST(Letters, Utf8RoundTrip) {
  for (auto l : alphabet()) {
    EXPECT_EQ(parse_letter(l.utf8()), l);
    EXPECT_EQ(parse_letter(l.label()), l);
  }
  const auto word = parse_word("جامعة");
  EXPECT_EQ(parse_word(to_utf8(word)), word);
}

TEST(Letters, TruncatedUtf8Throws) {
  const std::string bad = std::string("\xD9", 1);
  EXPECT_THROW((void)utf8::decode(bad), InvalidArgument);
}

TEST(Letters, FormNames) {
  for (auto f : kAllForms) EXPECT_EQ(parse_position_form(to_string(f)), f);
  EXPECT_THROW((void)parse_position_form("middle"), InvalidArgument);
}

}  // namespace
}  // namespace qalam

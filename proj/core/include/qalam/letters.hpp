#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qalam {

/// One of the 28 base letters of the Arabic alphabet, identified by its
/// isolated-form code point (U+0627 .. U+064A).
class Letter {
 public:
  constexpr Letter() = default;
  constexpr explicit Letter(char32_t codepoint) : codepoint_(codepoint) {}

  [[nodiscard]] constexpr char32_t codepoint() const noexcept { return codepoint_; }
  /// UTF-8 encoding of the code point.
  [[nodiscard]] std::string utf8() const;
  /// "U+0627" style label.
  [[nodiscard]] std::string label() const;
  /// Romanised name, e.g. "alif".
  [[nodiscard]] std::string_view name() const;

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter, Letter) = default;

 private:
  char32_t codepoint_ = 0;
};

inline constexpr std::size_t kAlphabetSize = 28;

/// Traditional (hijā'ī) order.
[[nodiscard]] const std::array<Letter, kAlphabetSize>& alphabet();

enum class PositionForm { Isolated, Initial, Medial, Final };
enum class WidthCategory { Small, Medium, Large };

inline constexpr std::array<PositionForm, 4> kAllForms{
    PositionForm::Isolated, PositionForm::Initial, PositionForm::Medial, PositionForm::Final};

[[nodiscard]] std::string_view to_string(PositionForm form);
[[nodiscard]] std::string_view to_string(WidthCategory category);
/// Case-insensitive; throws InvalidArgument.
[[nodiscard]] PositionForm parse_position_form(std::string_view text);
[[nodiscard]] WidthCategory parse_width_category(std::string_view text);

/// Small: alif baa taa thaa. Medium: jeem haa khaa dal thal raa zay seen
/// sheen. Large: the remaining fifteen. Throws UnknownLetter outside the
/// alphabet.
[[nodiscard]] WidthCategory width_category(Letter letter);

[[nodiscard]] bool is_alphabet_letter(char32_t codepoint) noexcept;

/// Maps orthographic variants onto their base letter (hamza-carrying alifs
/// to alif, taa marbuta to taa, alif maqsura to yaa) and validates the
/// result. Throws UnknownLetter.
[[nodiscard]] Letter canonical_letter(char32_t codepoint);

/// Accepts "U+XXXX" or a single UTF-8 letter, optionally followed by
/// tatweel (so "هـ" parses). Throws UnknownLetter.
[[nodiscard]] Letter parse_letter(std::string_view text);

/// Splits a UTF-8 word into canonical letters, dropping tatweel and
/// whitespace. Throws UnknownLetter for anything else.
[[nodiscard]] std::vector<Letter> parse_word(std::string_view utf8);

[[nodiscard]] std::string to_utf8(const std::vector<Letter>& letters);

namespace utf8 {
/// Decodes UTF-8; throws InvalidArgument on malformed input.
[[nodiscard]] std::u32string decode(std::string_view text);
[[nodiscard]] std::string encode(char32_t codepoint);
}  // namespace utf8

}  // namespace qalam

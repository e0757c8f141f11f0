#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace pointseg {

// The six character categories used by type n-gram features.
enum class CharType : std::uint8_t {
  Hiragana = 0,  // H
  Katakana,      // T
  Kanji,         // K
  Digit,         // D
  Roman,         // R
  Other,         // O
};

inline constexpr std::size_t kNumCharTypes = 6;

// Code table mapping each category to its 3-bit code in [1, 6]; code 0 is
// reserved for out-of-text padding. Indexed by CharType.
using TypeCodeTable = std::array<std::uint8_t, kNumCharTypes>;

inline constexpr TypeCodeTable kDefaultTypeCodes = {1, 2, 3, 4, 5, 6};

bool is_valid_code_table(const TypeCodeTable& table);

char char_type_letter(CharType type);

// Total over all scalar values; anything outside the five specific ranges
// maps to Other.
CharType classify_char(char32_t ch);

std::vector<CharType> type_sequence(std::u32string_view text);

// Per-character 3-bit codes (values in [1, 6]) under the given code table.
std::u32string type_code_sequence(std::u32string_view text, const TypeCodeTable& table);

}  // namespace pointseg

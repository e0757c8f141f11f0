#include "pointseg/chartype.hpp"

#include <algorithm>

namespace pointseg {

bool is_valid_code_table(const TypeCodeTable& table) {
  std::array<bool, kNumCharTypes + 1> seen{};
  for (auto code : table) {
    if (code < 1 || code > 6 || seen[code]) return false;
    seen[code] = true;
  }
  return true;
}

char char_type_letter(CharType type) {
  static constexpr char kLetters[kNumCharTypes] = {'H', 'T', 'K', 'D', 'R', 'O'};
  return kLetters[static_cast<std::size_t>(type)];
}

CharType classify_char(char32_t ch) {
  const auto in = [ch](char32_t lo, char32_t hi) { return ch >= lo && ch <= hi; };
  if (in(0x3040, 0x309F)) return CharType::Hiragana;
  // Katakana block (incl. the prolonged sound mark U+30FC) and the phonetic
  // extensions block.
  if (in(0x30A0, 0x30FF) || in(0x31F0, 0x31FF)) return CharType::Katakana;
  // CJK Unified Ideographs: base block, extension A, and the plane-2/3
  // extension area.
  if (in(0x4E00, 0x9FFF) || in(0x3400, 0x4DBF) || in(0x20000, 0x2FFFF) || in(0x30000, 0x3134F))
    return CharType::Kanji;
  if (in(0x0030, 0x0039) || in(0xFF10, 0xFF19)) return CharType::Digit;
  if (in(0x0041, 0x005A) || in(0x0061, 0x007A) || in(0xFF21, 0xFF3A) || in(0xFF41, 0xFF5A))
    return CharType::Roman;
  return CharType::Other;
}

std::vector<CharType> type_sequence(std::u32string_view text) {
  std::vector<CharType> types(text.size());
  std::transform(text.begin(), text.end(), types.begin(), classify_char);
  return types;
}

std::u32string type_code_sequence(std::u32string_view text, const TypeCodeTable& table) {
  std::u32string codes(text.size(), 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    codes[i] = table[static_cast<std::size_t>(classify_char(text[i]))];
  }
  return codes;
}

}  // namespace pointseg

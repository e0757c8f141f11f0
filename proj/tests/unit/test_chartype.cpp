#include <doctest.h>

#include "pointseg/chartype.hpp"

using namespace pointseg;

TEST_CASE("classify_char covers the six categories") {
  CHECK(classify_char(U'の') == CharType::Hiragana);
  CHECK(classify_char(U'ア') == CharType::Katakana);
  CHECK(classify_char(U'ー') == CharType::Katakana);  // prolonged sound mark
  CHECK(classify_char(U'ヶ') == CharType::Katakana);
  CHECK(classify_char(U'世') == CharType::Kanji);
  CHECK(classify_char(U'㐀') == CharType::Kanji);  // extension A
  CHECK(classify_char(char32_t(0x20000)) == CharType::Kanji);
  CHECK(classify_char(U'7') == CharType::Digit);
  CHECK(classify_char(U'７') == CharType::Digit);
  CHECK(classify_char(U'Z') == CharType::Roman);
  CHECK(classify_char(U'q') == CharType::Roman);
  CHECK(classify_char(U'Ｑ') == CharType::Roman);
  CHECK(classify_char(U'€') == CharType::Other);
  CHECK(classify_char(U' ') == CharType::Other);
  CHECK(classify_char(U'、') == CharType::Other);
  CHECK(classify_char(U'々') == CharType::Other);  // iteration mark is not a unified ideograph
  CHECK(classify_char(char32_t(0)) == CharType::Other);
}

TEST_CASE("classify_char is total over scalar values") {
  // Spot-sweep the whole range including plane boundaries.
  for (char32_t ch = 0; ch < 0x110000; ch += 257) {
    const auto t = classify_char(ch);
    CHECK(static_cast<unsigned>(t) < kNumCharTypes);
  }
}

TEST_CASE("type_sequence") {
  const auto types = type_sequence(U"世界の");
  REQUIRE(types.size() == 3);
  CHECK(types[0] == CharType::Kanji);
  CHECK(types[1] == CharType::Kanji);
  CHECK(types[2] == CharType::Hiragana);

  CHECK(type_sequence(U"").empty());

  const auto mixed = type_sequence(U"A1あ");
  REQUIRE(mixed.size() == 3);
  CHECK(mixed[0] == CharType::Roman);
  CHECK(mixed[1] == CharType::Digit);
  CHECK(mixed[2] == CharType::Hiragana);
}

TEST_CASE("type_code_sequence uses the table") {
  CHECK(type_code_sequence(U"世界の", kDefaultTypeCodes) == std::u32string{3, 3, 1});
  TypeCodeTable reversed = {6, 5, 4, 3, 2, 1};
  CHECK(type_code_sequence(U"世界の", reversed) == std::u32string{4, 4, 6});
}

TEST_CASE("code table validation") {
  CHECK(is_valid_code_table(kDefaultTypeCodes));
  CHECK(is_valid_code_table({2, 1, 4, 3, 6, 5}));
  CHECK_FALSE(is_valid_code_table({1, 1, 2, 3, 4, 5}));  // repeated
  CHECK_FALSE(is_valid_code_table({0, 1, 2, 3, 4, 5}));  // 0 is padding only
  CHECK_FALSE(is_valid_code_table({1, 2, 3, 4, 5, 7}));  // out of range
}

TEST_CASE("letters") {
  CHECK(char_type_letter(CharType::Hiragana) == 'H');
  CHECK(char_type_letter(CharType::Katakana) == 'T');
  CHECK(char_type_letter(CharType::Kanji) == 'K');
  CHECK(char_type_letter(CharType::Digit) == 'D');
  CHECK(char_type_letter(CharType::Roman) == 'R');
  CHECK(char_type_letter(CharType::Other) == 'O');
}

#pragma once

#include <string>
#include <string_view>

namespace pointseg::utf8 {

// Strict UTF-8 decoding: rejects overlong forms, surrogates and values above
// U+10FFFF with Error{Encoding}.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view text);
std::string encode(char32_t ch);

}  // namespace pointseg::utf8

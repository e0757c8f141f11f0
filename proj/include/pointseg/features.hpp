#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pointseg/chartype.hpp"

namespace pointseg {

// One active feature at a character boundary. Character and type n-grams
// carry the offset of their first character from the boundary (rel_pos 0 =
// starts immediately right of it); dictionary features carry the word alone.
struct BoundaryFeature {
  enum class Kind : std::uint8_t { CharNgram, TypeNgram, DictLeft, DictInside, DictRight };

  Kind kind = Kind::CharNgram;
  std::u32string pattern;  // characters, type codes, or the dictionary word
  std::int32_t rel_pos = 0;

  auto operator<=>(const BoundaryFeature&) const = default;
};

struct FeatureCount {
  BoundaryFeature feature;
  std::int32_t count = 1;

  bool operator==(const FeatureCount&) const = default;
};

struct DictMatch {
  std::uint32_t word_index = 0;
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open [begin, end)

  bool operator==(const DictMatch&) const = default;
};

// Every occurrence of every word, by naive scanning. Ordered by word index,
// then start position.
std::vector<DictMatch> find_dict_matches(std::u32string_view text,
                                         std::span<const std::u32string> words);

// All features active at boundary `index` (in [1, N-1]): character and type
// n-grams of length <= max_ngram lying fully inside both the text and the 2W
// window, and one dictionary feature per word occurrence touching the
// boundary (so overlapping occurrences yield counts > 1).
std::vector<FeatureCount> extract_features(std::u32string_view text, std::size_t index,
                                           std::uint32_t window, std::uint32_t max_ngram,
                                           std::span<const DictMatch> dict_matches,
                                           std::span<const std::u32string> dict_words,
                                           const TypeCodeTable& type_codes = kDefaultTypeCodes);

}  // namespace pointseg

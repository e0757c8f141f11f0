#include "pointseg/features.hpp"

#include <algorithm>

namespace pointseg {

std::vector<DictMatch> find_dict_matches(std::u32string_view text,
                                         std::span<const std::u32string> words) {
  std::vector<DictMatch> matches;
  for (std::uint32_t w = 0; w < words.size(); ++w) {
    const auto& word = words[w];
    if (word.empty() || word.size() > text.size()) continue;
    for (std::size_t j = 0; j + word.size() <= text.size(); ++j) {
      if (text.compare(j, word.size(), word) == 0) {
        matches.push_back({w, j, j + word.size()});
      }
    }
  }
  return matches;
}

std::vector<FeatureCount> extract_features(std::u32string_view text, std::size_t index,
                                           std::uint32_t window, std::uint32_t max_ngram,
                                           std::span<const DictMatch> dict_matches,
                                           std::span<const std::u32string> dict_words,
                                           const TypeCodeTable& type_codes) {
  std::vector<FeatureCount> feats;
  const auto n_chars = static_cast<std::int64_t>(text.size());
  const auto i = static_cast<std::int64_t>(index);
  const std::int64_t w = window;

  // Window characters present in the text: [lo, hi).
  const std::int64_t lo = std::max<std::int64_t>(0, i - w);
  const std::int64_t hi = std::min<std::int64_t>(n_chars, i + w);
  const std::u32string window_codes =
      type_code_sequence(text.substr(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo)),
                         type_codes);

  const std::int64_t max_n = std::min<std::int64_t>(max_ngram, 2 * w);
  for (std::int64_t n = 1; n <= max_n; ++n) {
    for (std::int64_t j = lo; j + n <= hi; ++j) {
      const auto rel = static_cast<std::int32_t>(j - i);
      feats.push_back({{BoundaryFeature::Kind::CharNgram,
                        std::u32string(text.substr(static_cast<std::size_t>(j), static_cast<std::size_t>(n))),
                        rel},
                       1});
      feats.push_back({{BoundaryFeature::Kind::TypeNgram,
                        window_codes.substr(static_cast<std::size_t>(j - lo), static_cast<std::size_t>(n)),
                        rel},
                       1});
    }
  }

  for (const auto& m : dict_matches) {
    const auto b = static_cast<std::size_t>(index);
    BoundaryFeature::Kind kind;
    if (m.begin == b) {
      kind = BoundaryFeature::Kind::DictLeft;
    } else if (m.end == b) {
      kind = BoundaryFeature::Kind::DictRight;
    } else if (m.begin < b && b < m.end) {
      kind = BoundaryFeature::Kind::DictInside;
    } else {
      continue;
    }
    BoundaryFeature feat{kind, dict_words[m.word_index], 0};
    auto it = std::find_if(feats.begin(), feats.end(),
                           [&](const FeatureCount& fc) { return fc.feature == feat; });
    if (it != feats.end()) {
      ++it->count;
    } else {
      feats.push_back({std::move(feat), 1});
    }
  }
  return feats;
}

}  // namespace pointseg

#include "pointseg/naive_scorer.hpp"

#include <vector>

#include "pointseg/features.hpp"

namespace pointseg {

SegmentationResult score_naive(const RawModel& model, std::u32string_view text) {
  SegmentationResult result;
  const std::size_t n_chars = text.size();
  if (n_chars >= 1) result.scores.assign(n_chars - 1, model.bias);

  std::vector<std::u32string> words;
  words.reserve(model.dict.size());
  for (const auto& entry : model.dict) words.push_back(entry.word);
  const auto matches = find_dict_matches(text, words);

  for (std::size_t i = 1; i < n_chars; ++i) {
    std::int64_t score = result.scores[i - 1];
    const auto feats = extract_features(text, i, model.window, model.max_ngram, matches, words,
                                        model.type_codes);
    for (const auto& [feat, count] : feats) {
      std::int64_t weight = 0;
      switch (feat.kind) {
        case BoundaryFeature::Kind::CharNgram: {
          auto it = model.char_ngrams.find(feat.pattern);
          if (it != model.char_ngrams.end()) {
            // Eq-2 layout: index of relative position rel is W - n - rel.
            const auto idx = static_cast<std::size_t>(
                static_cast<std::int64_t>(model.window) -
                static_cast<std::int64_t>(feat.pattern.size()) - feat.rel_pos);
            weight = it->second[idx];
          }
          break;
        }
        case BoundaryFeature::Kind::TypeNgram: {
          auto it = model.type_ngrams.find(feat.pattern);
          if (it != model.type_ngrams.end()) {
            const auto idx = static_cast<std::size_t>(
                static_cast<std::int64_t>(model.window) -
                static_cast<std::int64_t>(feat.pattern.size()) - feat.rel_pos);
            weight = it->second[idx];
          }
          break;
        }
        case BoundaryFeature::Kind::DictLeft:
        case BoundaryFeature::Kind::DictInside:
        case BoundaryFeature::Kind::DictRight: {
          auto it = std::lower_bound(model.dict.begin(), model.dict.end(), feat.pattern,
                                     [](const DictEntry& e, const std::u32string& word) {
                                       return e.word < word;
                                     });
          if (it != model.dict.end() && it->word == feat.pattern) {
            weight = feat.kind == BoundaryFeature::Kind::DictLeft     ? it->weight_left
                     : feat.kind == BoundaryFeature::Kind::DictInside ? it->weight_inside
                                                                      : it->weight_right;
          }
          break;
        }
      }
      score += weight * count;
    }
    result.scores[i - 1] = static_cast<std::int32_t>(score);
  }

  finalize_result(result, n_chars);
  return result;
}

}  // namespace pointseg

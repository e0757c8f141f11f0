#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "pointseg/chartype.hpp"

namespace pointseg {

// Integer weight vector attached to a pattern or automaton state.
// weights[0] applies to the boundary at (match end + start_offset); weights[t]
// to the one t positions further right. Additions are clipped to the valid
// boundary range [1, N-1].
struct ScoreArray {
  std::int32_t start_offset = 0;
  std::vector<std::int32_t> weights;

  bool empty() const { return weights.empty(); }
  bool operator==(const ScoreArray&) const = default;
};

struct DictEntry {
  std::u32string word;
  std::int32_t weight_left = 0;
  std::int32_t weight_inside = 0;
  std::int32_t weight_right = 0;

  bool operator==(const DictEntry&) const = default;
};

// Trained, quantized feature weights. Pattern weight arrays follow the
// result-array layout: for a pattern of length n, entry i holds the weight of
// relative position W - n - i, so an array has 2W - n + 1 entries and is added
// starting at boundary (match end - W).
struct RawModel {
  std::uint32_t window = 3;     // W
  std::uint32_t max_ngram = 3;  // longest n-gram length
  double quant_scale = 1.0;     // float-to-integer scale used at quantization
  std::int32_t bias = 0;
  TypeCodeTable type_codes = kDefaultTypeCodes;
  std::map<std::u32string, std::vector<std::int32_t>> char_ngrams;
  // Keyed by 3-bit code sequences (values in [1, 6]) under type_codes.
  std::map<std::u32string, std::vector<std::int32_t>> type_ngrams;
  std::vector<DictEntry> dict;  // sorted by word, unique

  // Structural invariants; throws Error{InvariantViolation}.
  void validate() const;

  bool operator==(const RawModel&) const = default;
};

struct WorkCounters {
  std::uint64_t char_arrays_summed = 0;
  std::uint64_t dict_arrays_summed = 0;
  std::uint64_t type_arrays_summed = 0;
  std::uint64_t type_cache_lookups = 0;

  WorkCounters& operator+=(const WorkCounters& other) {
    char_arrays_summed += other.char_arrays_summed;
    dict_arrays_summed += other.dict_arrays_summed;
    type_arrays_summed += other.type_arrays_summed;
    type_cache_lookups += other.type_cache_lookups;
    return *this;
  }
  std::uint64_t total_arrays() const {
    return char_arrays_summed + dict_arrays_summed + type_arrays_summed;
  }
  bool operator==(const WorkCounters&) const = default;
};

struct TokenSpan {
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open [begin, end)

  bool operator==(const TokenSpan&) const = default;
};

struct SegmentationResult {
  std::vector<std::int32_t> scores;  // boundary scores y_1 .. y_{N-1}
  std::vector<bool> boundaries;      // boundaries[i] == (scores[i] > 0)
  std::vector<TokenSpan> tokens;
  WorkCounters counters;
};

// Derives boundaries and token spans from scores; text_len == scores.size()+1
// except for the empty text (both zero).
void finalize_result(SegmentationResult& result, std::size_t text_len);

// Adds sa into the result array: weights[0] lands on boundary
// (end_pos + start_offset); writes outside [1, N-1] are clipped.
// result[i] holds the score of boundary i+1.
inline void add_score_array(std::span<std::int32_t> result, std::int64_t end_pos,
                            const ScoreArray& sa) {
  const std::int64_t first = end_pos + sa.start_offset;  // boundary of weights[0]
  const auto len = static_cast<std::int64_t>(sa.weights.size());
  const std::int64_t lo = std::max<std::int64_t>(0, 1 - first);
  const std::int64_t hi = std::min<std::int64_t>(len - 1, static_cast<std::int64_t>(result.size()) - first);
  for (std::int64_t t = lo; t <= hi; ++t) {
    result[static_cast<std::size_t>(first + t - 1)] += sa.weights[static_cast<std::size_t>(t)];
  }
}

// Quantization: scale = (2^15 - 1) / max |float weight| over all features and
// bias; weights are rounded to nearest, ties to even.
double quantization_scale(double max_abs_weight);
std::int32_t quantize_weight(double weight, double scale);

}  // namespace pointseg

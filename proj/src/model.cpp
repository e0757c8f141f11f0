#include "pointseg/model.hpp"

#include <cmath>

#include "pointseg/errors.hpp"
#include "pointseg/utf8.hpp"

namespace pointseg {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::EmptyPatternSet: return "empty pattern set";
    case ErrorKind::EmptyPattern: return "empty pattern";
    case ErrorKind::DuplicatePattern: return "duplicate pattern";
    case ErrorKind::CacheTooLarge: return "cache too large";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::EmptyCorpus: return "empty corpus";
    case ErrorKind::BadCorpusLine: return "bad corpus line";
    case ErrorKind::BadMagic: return "bad magic";
    case ErrorKind::VersionMismatch: return "version mismatch";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::InvariantViolation: return "invariant violation";
    case ErrorKind::TextMismatch: return "text mismatch";
    case ErrorKind::Encoding: return "encoding error";
    case ErrorKind::Io: return "io error";
    case ErrorKind::InvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

namespace {

void check_ngram_table(const std::map<std::u32string, std::vector<std::int32_t>>& table,
                       std::uint32_t window, std::uint32_t max_ngram, bool type_side) {
  const std::uint64_t max_len = std::min<std::uint64_t>(max_ngram, 2ULL * window);
  for (const auto& [pattern, weights] : table) {
    const auto n = pattern.size();
    if (n == 0) throw Error(ErrorKind::InvariantViolation, "empty n-gram pattern");
    if (n > max_len) {
      throw Error(ErrorKind::InvariantViolation,
                  "n-gram pattern longer than min(max_ngram, 2W): n=" + std::to_string(n));
    }
    const std::size_t expected = 2 * window - n + 1;
    if (weights.size() != expected) {
      throw Error(ErrorKind::InvariantViolation,
                  "weight array for pattern of length " + std::to_string(n) + " has " +
                      std::to_string(weights.size()) + " entries, expected " +
                      std::to_string(expected));
    }
    if (type_side) {
      for (char32_t code : pattern) {
        if (code < 1 || code > 6) {
          throw Error(ErrorKind::InvariantViolation, "type n-gram code outside [1, 6]");
        }
      }
    }
  }
}

}  // namespace

void RawModel::validate() const {
  if (window < 1) throw Error(ErrorKind::InvariantViolation, "window must be >= 1");
  if (max_ngram < 1) throw Error(ErrorKind::InvariantViolation, "max_ngram must be >= 1");
  if (!(quant_scale > 0.0) || !std::isfinite(quant_scale)) {
    throw Error(ErrorKind::InvariantViolation, "quant_scale must be positive and finite");
  }
  if (!is_valid_code_table(type_codes)) {
    throw Error(ErrorKind::InvariantViolation, "type code table is not a bijection onto [1, 6]");
  }
  check_ngram_table(char_ngrams, window, max_ngram, false);
  check_ngram_table(type_ngrams, window, max_ngram, true);
  for (std::size_t i = 0; i < dict.size(); ++i) {
    if (dict[i].word.empty()) throw Error(ErrorKind::InvariantViolation, "empty dictionary word");
    if (i > 0 && !(dict[i - 1].word < dict[i].word)) {
      throw Error(ErrorKind::InvariantViolation,
                  "dictionary words must be sorted and unique: '" + utf8::encode(dict[i].word) + "'");
    }
  }
}

void finalize_result(SegmentationResult& result, std::size_t text_len) {
  const std::size_t n_bound = result.scores.size();
  result.boundaries.resize(n_bound);
  for (std::size_t i = 0; i < n_bound; ++i) result.boundaries[i] = result.scores[i] > 0;
  result.tokens.clear();
  if (text_len == 0) return;
  std::size_t start = 0;
  for (std::size_t i = 0; i < n_bound; ++i) {
    if (result.boundaries[i]) {
      result.tokens.push_back({start, i + 1});
      start = i + 1;
    }
  }
  result.tokens.push_back({start, text_len});
}

double quantization_scale(double max_abs_weight) {
  if (!(max_abs_weight > 0.0)) return 1.0;
  return 32767.0 / max_abs_weight;
}

std::int32_t quantize_weight(double weight, double scale) {
  return static_cast<std::int32_t>(std::nearbyint(weight * scale));
}

}  // namespace pointseg

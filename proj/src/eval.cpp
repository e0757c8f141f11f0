#include "pointseg/eval.hpp"

#include "pointseg/errors.hpp"
#include "pointseg/utf8.hpp"

namespace pointseg {

namespace {

// Word spans as sorted (begin, end) pairs.
std::vector<std::pair<std::size_t, std::size_t>> spans(const Segmented& s) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (s.text.empty()) return out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.boundaries.size(); ++i) {
    if (s.boundaries[i]) {
      out.emplace_back(start, i + 1);
      start = i + 1;
    }
  }
  out.emplace_back(start, s.text.size());
  return out;
}

}  // namespace

void EvalCounts::accumulate(const Segmented& gold, const Segmented& pred) {
  if (gold.text != pred.text) {
    throw Error(ErrorKind::TextMismatch,
                "gold text '" + utf8::encode(gold.text) + "' vs predicted text '" +
                    utf8::encode(pred.text) + "'");
  }
  boundaries_total += gold.boundaries.size();
  for (std::size_t i = 0; i < gold.boundaries.size(); ++i) {
    if (gold.boundaries[i] != pred.boundaries[i]) ++boundaries_wrong;
  }
  const auto gold_spans = spans(gold);
  const auto pred_spans = spans(pred);
  gold_words += gold_spans.size();
  pred_words += pred_spans.size();
  std::size_t gi = 0, pi = 0;
  while (gi < gold_spans.size() && pi < pred_spans.size()) {
    if (gold_spans[gi] == pred_spans[pi]) {
      ++matched_words;
      ++gi;
      ++pi;
    } else if (gold_spans[gi] < pred_spans[pi]) {
      ++gi;
    } else {
      ++pi;
    }
  }
}

double EvalCounts::boundary_error_rate() const {
  if (boundaries_total == 0) return 0.0;
  return static_cast<double>(boundaries_wrong) / static_cast<double>(boundaries_total);
}

F1Result EvalCounts::word_f1() const {
  F1Result r;
  r.precision = pred_words == 0 ? 0.0 : static_cast<double>(matched_words) / static_cast<double>(pred_words);
  r.recall = gold_words == 0 ? 0.0 : static_cast<double>(matched_words) / static_cast<double>(gold_words);
  r.f1 = (r.precision + r.recall) == 0.0 ? 0.0
                                         : 2.0 * r.precision * r.recall / (r.precision + r.recall);
  return r;
}

namespace {

EvalCounts accumulate_corpus(std::span<const Segmented> gold, std::span<const Segmented> pred) {
  if (gold.size() != pred.size()) {
    throw Error(ErrorKind::TextMismatch,
                "corpus sizes differ: " + std::to_string(gold.size()) + " vs " +
                    std::to_string(pred.size()));
  }
  EvalCounts counts;
  for (std::size_t i = 0; i < gold.size(); ++i) counts.accumulate(gold[i], pred[i]);
  return counts;
}

}  // namespace

double boundary_error_rate(std::span<const Segmented> gold, std::span<const Segmented> pred) {
  return accumulate_corpus(gold, pred).boundary_error_rate();
}

F1Result word_f1(std::span<const Segmented> gold, std::span<const Segmented> pred) {
  return accumulate_corpus(gold, pred).word_f1();
}

}  // namespace pointseg

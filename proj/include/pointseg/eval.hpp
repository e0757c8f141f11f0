#pragma once

#include <span>

#include "pointseg/corpus.hpp"

namespace pointseg {

struct F1Result {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct EvalCounts {
  std::uint64_t boundaries_total = 0;
  std::uint64_t boundaries_wrong = 0;
  std::uint64_t gold_words = 0;
  std::uint64_t pred_words = 0;
  std::uint64_t matched_words = 0;

  // Throws Error{TextMismatch} when the underlying texts differ.
  void accumulate(const Segmented& gold, const Segmented& pred);

  double boundary_error_rate() const;
  F1Result word_f1() const;
};

// Micro-averaged over the corpus: total differing boundary decisions over
// total boundaries.
double boundary_error_rate(std::span<const Segmented> gold, std::span<const Segmented> pred);

// A predicted word counts as correct iff its exact span appears in gold.
F1Result word_f1(std::span<const Segmented> gold, std::span<const Segmented> pred);

}  // namespace pointseg

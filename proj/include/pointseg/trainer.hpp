#pragma once

#include <span>

#include "pointseg/corpus.hpp"
#include "pointseg/model.hpp"

namespace pointseg {

struct TrainConfig {
  std::uint32_t window = 3;
  std::uint32_t max_ngram = 3;
  // LIBLINEAR-style penalty: objective ||w||_1 + C * sum(logistic loss);
  // smaller C means stronger regularization.
  double penalty_c = 1.0;
  std::uint32_t max_iterations = 300;
  // Recorded for reproducibility; the solver itself is deterministic.
  std::uint64_t seed = 42;
};

struct TrainOutput {
  RawModel model;
  std::size_t examples = 0;
  std::size_t features_seen = 0;     // distinct features in the corpus
  std::size_t features_nonzero = 0;  // nonzero float weights after solving
  std::size_t weights_stored = 0;    // nonzero quantized weights kept in the model
  double objective = 0.0;
};

// Fits one binary linear classifier over all boundary examples with
// L1-regularized logistic loss (proximal gradient with acceleration and
// backtracking), then quantizes. Features with zero weight are dropped.
// Throws Error{EmptyCorpus} when the corpus yields no boundary examples.
TrainOutput train(std::span<const Segmented> corpus, std::span<const std::u32string> dict,
                  const TrainConfig& config);

}  // namespace pointseg

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pointseg/model.hpp"
#include "pointseg/pma.hpp"

namespace pointseg {

// How dictionary scoring is wired into the engine:
//   Separate - dictionary words live in their own automaton;
//   Short    - words of length <= W fold into the character-side state
//              payloads, longer words stay in the separate automaton;
//   All      - every word folds into the character side, no dictionary
//              automaton remains.
enum class DictMode : std::uint8_t { Separate, Short, All };

struct EngineConfig {
  bool merge_char_scores = false;
  DictMode dict_mode = DictMode::Separate;
  bool type_cache = false;

  // Named configurations "a".."e", plus compositional forms such as
  // "a+short", "b+all". Returns nullopt for unknown names.
  static std::optional<EngineConfig> from_name(std::string_view name);

  bool operator==(const EngineConfig&) const = default;
};

// Scoring subroutine mask for benchmark breakdowns; the bias is always
// applied.
struct Subroutines {
  bool char_ngrams = true;
  bool type_ngrams = true;
  bool dict_words = true;
};

constexpr std::uint64_t sequence_id_init() { return 0; }

// Id(i+1) = (2^3 Id(i) + code) mod 2^(6W); code 0 encodes out-of-text padding.
constexpr std::uint64_t sequence_id_step(std::uint64_t id, std::uint32_t code,
                                         std::uint32_t window) {
  return ((id << 3) | code) & ((std::uint64_t{1} << (6 * window)) - 1);
}

// Direct evaluation of the window sequence ID at boundary `index` from the
// padded per-character codes (the non-recurrent formula).
std::uint64_t sequence_id_direct(std::span<const std::uint32_t> padded_codes, std::int64_t index,
                                 std::uint32_t window);

// Total type n-gram contribution for every possible padded window, indexed by
// sequence ID. Length 2^(6W); rejects window > 4 with Error{CacheTooLarge}.
std::vector<std::int32_t> build_type_cache(const RawModel& model);

// One of the five engine configurations (plus the Short dictionary
// variants). All configurations produce boundary scores bit-identical to
// score_naive on the source model; they differ only in how much work the
// score aggregation performs.
class CompiledEngine {
 public:
  // All precomputation (automata, per-state partial sums, dictionary
  // integration, type cache fill) happens here; scoring never precomputes.
  // Rejects models whose worst-case boundary accumulation could overflow
  // int32 (Error{Overflow}) and type_cache with W > 4 (Error{CacheTooLarge}).
  static CompiledEngine compile(RawModel model, EngineConfig config);

  SegmentationResult score(std::u32string_view text, Subroutines passes = {}) const;
  SegmentationResult tokenize(std::u32string_view text) const { return score(text); }

  const EngineConfig& config() const { return config_; }
  const RawModel& model() const { return model_; }
  std::uint32_t window() const { return model_.window; }
  std::int32_t bias() const { return model_.bias; }

  const std::optional<PatternAutomaton>& char_pma() const { return char_pma_; }
  const std::optional<PatternAutomaton>& type_pma() const { return type_pma_; }
  const std::optional<PatternAutomaton>& dict_pma() const { return dict_pma_; }
  const std::vector<ScoreArray>& char_pattern_arrays() const { return char_arrays_; }
  const std::vector<ScoreArray>& type_pattern_arrays() const { return type_arrays_; }
  const std::vector<ScoreArray>& dict_word_arrays() const { return dict_arrays_; }
  const std::vector<std::int32_t>& type_cache_table() const { return type_cache_; }

  bool operator==(const CompiledEngine&) const = default;

 private:
  CompiledEngine() = default;

  RawModel model_;
  EngineConfig config_;
  std::optional<PatternAutomaton> char_pma_;
  std::vector<ScoreArray> char_arrays_;  // per char-side pattern, merge off only
  std::optional<PatternAutomaton> type_pma_;
  std::vector<ScoreArray> type_arrays_;
  std::vector<std::int32_t> type_cache_;
  std::optional<PatternAutomaton> dict_pma_;
  std::vector<ScoreArray> dict_arrays_;
};

}  // namespace pointseg

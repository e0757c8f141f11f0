#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pointseg/model.hpp"

namespace pointseg {

struct MatchEvent {
  std::uint32_t pattern_id = 0;
  std::size_t begin = 0;
  std::size_t end = 0;  // half-open [begin, end)

  bool operator==(const MatchEvent&) const = default;
};

// Aho-Corasick automaton with transitions in a compacted double array: the
// child of state s under symbol v lives at slot base[s] ^ code(v), and
// check[slot] == s identifies the edge, so a lookup is two array reads.
// Symbols are remapped to dense codes >= 1 in descending frequency order.
// State ids are slot indices; the root is 0. Immutable once built (payloads
// are attached once during engine compilation).
class PatternAutomaton {
 public:
  struct Output {
    std::uint32_t pattern_id = 0;
    std::uint32_t length = 0;

    bool operator==(const Output&) const = default;
  };

  static constexpr std::uint32_t kRoot = 0;
  static constexpr std::uint32_t kNoTransition = UINT32_MAX;

  // Patterns are sorted internally; ids follow the sorted order. Rejects an
  // empty set, empty patterns and duplicates.
  static PatternAutomaton build(std::vector<std::u32string> patterns);

  std::uint32_t num_states() const { return num_states_; }
  std::size_t table_size() const { return check_.size(); }
  const std::vector<std::u32string>& patterns() const { return patterns_; }

  // Raw double-array probe; kNoTransition when the state has no edge for the
  // symbol. `probes` (when given) counts the array reads performed.
  std::uint32_t transition(std::uint32_t state, char32_t symbol, unsigned* probes = nullptr) const {
    auto it = codes_.find(symbol);
    if (it == codes_.end()) return kNoTransition;
    if (probes) ++*probes;
    const std::int32_t base = base_[state];
    if (base < 0) return kNoTransition;
    const auto slot = static_cast<std::uint32_t>(base) ^ it->second;
    if (probes) ++*probes;
    if (slot >= check_.size() || check_[slot] != static_cast<std::int32_t>(state)) {
      return kNoTransition;
    }
    return slot;
  }

  // AC move: follows failure transitions until an edge exists or the root is
  // reached (the root behaves as if it had a self-loop on every symbol).
  std::uint32_t step(std::uint32_t state, char32_t symbol) const {
    for (;;) {
      const std::uint32_t next = transition(state, symbol);
      if (next != kNoTransition) return next;
      if (state == kRoot) return kRoot;
      state = fail_[state];
    }
  }

  std::uint32_t fail(std::uint32_t state) const { return fail_[state]; }

  // Registered patterns that are suffixes of the state's string, longest
  // first (the state's own pattern, then down the failure chain).
  std::span<const Output> outputs(std::uint32_t state) const {
    return {out_entries_.data() + out_offsets_[state],
            out_offsets_[state + 1] - out_offsets_[state]};
  }

  // Every occurrence of every pattern, ordered by increasing end position,
  // ties by decreasing length.
  std::vector<MatchEvent> find_overlapping(std::u32string_view text) const;

  void set_payload(std::uint32_t state, ScoreArray payload);
  const ScoreArray* payload(std::uint32_t state) const {
    return payloads_[state].empty() ? nullptr : &payloads_[state];
  }

  // Streams the text, adding the active state's payload (if any) at every
  // position; returns the number of payload additions. `result` holds the
  // scores of boundaries 1..N-1.
  std::uint64_t run_with_payload(std::u32string_view text, std::span<std::int32_t> result) const;

  bool operator==(const PatternAutomaton&) const = default;

 private:
  std::vector<std::int32_t> base_;   // -1: no children
  std::vector<std::int32_t> check_;  // parent state; -1 free, -2 reserved
  std::vector<std::uint32_t> fail_;
  std::vector<std::size_t> out_offsets_;  // CSR over out_entries_, size table+1
  std::vector<Output> out_entries_;
  std::vector<ScoreArray> payloads_;
  std::unordered_map<char32_t, std::uint32_t> codes_;
  std::vector<std::u32string> patterns_;
  std::uint32_t num_states_ = 0;
};

}  // namespace pointseg

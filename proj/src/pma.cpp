#include "pointseg/pma.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "pointseg/errors.hpp"
#include "pointseg/utf8.hpp"

namespace pointseg {

namespace {

constexpr std::int32_t kFree = -1;
constexpr std::int32_t kReserved = -2;

struct TrieNode {
  std::map<char32_t, std::uint32_t> children;
  std::int32_t pattern_id = -1;
  std::uint32_t depth = 0;
};

// Doubly linked list over the free cells of check[], kept in ascending
// address order for first-fit scans.
class FreeList {
 public:
  void grow(std::vector<std::int32_t>& check, std::size_t new_size) {
    const std::size_t old = check.size();
    check.resize(new_size, kFree);
    next_.resize(new_size, -1);
    prev_.resize(new_size, -1);
    for (std::size_t i = old; i < new_size; ++i) link_back(static_cast<std::int32_t>(i));
  }

  void remove(std::int32_t cell) {
    const auto p = prev_[cell];
    const auto n = next_[cell];
    if (p >= 0) next_[p] = n; else head_ = n;
    if (n >= 0) prev_[n] = p; else tail_ = p;
    next_[cell] = prev_[cell] = -1;
  }

  std::int32_t head() const { return head_; }
  std::int32_t next(std::int32_t cell) const { return next_[cell]; }

 private:
  void link_back(std::int32_t cell) {
    prev_[cell] = tail_;
    next_[cell] = -1;
    if (tail_ >= 0) next_[tail_] = cell; else head_ = cell;
    tail_ = cell;
  }

  std::vector<std::int32_t> next_, prev_;
  std::int32_t head_ = -1;
  std::int32_t tail_ = -1;
};

}  // namespace

PatternAutomaton PatternAutomaton::build(std::vector<std::u32string> patterns) {
  if (patterns.empty()) throw Error(ErrorKind::EmptyPatternSet, "no patterns to build from");
  std::sort(patterns.begin(), patterns.end());
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    if (patterns[i].empty()) throw Error(ErrorKind::EmptyPattern, "patterns must be non-empty");
    if (i > 0 && patterns[i] == patterns[i - 1]) {
      throw Error(ErrorKind::DuplicatePattern, "'" + utf8::encode(patterns[i]) + "'");
    }
  }

  // Trie over sorted patterns.
  std::vector<TrieNode> trie(1);
  for (std::uint32_t pid = 0; pid < patterns.size(); ++pid) {
    std::uint32_t node = 0;
    for (char32_t sym : patterns[pid]) {
      auto [it, inserted] = trie[node].children.try_emplace(sym, 0);
      if (inserted) {
        it->second = static_cast<std::uint32_t>(trie.size());
        const std::uint32_t depth = trie[node].depth + 1;
        trie.push_back({{}, -1, depth});  // map iterators survive the vector realloc
      }
      node = it->second;
    }
    trie[node].pattern_id = static_cast<std::int32_t>(pid);
  }

  // Dense symbol codes, most frequent first; ties by symbol value.
  PatternAutomaton pma;
  {
    std::map<char32_t, std::uint64_t> freq;
    for (const auto& p : patterns) {
      for (char32_t sym : p) ++freq[sym];
    }
    std::vector<std::pair<char32_t, std::uint64_t>> order(freq.begin(), freq.end());
    std::stable_sort(order.begin(), order.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    std::uint32_t code = 1;
    for (const auto& [sym, count] : order) pma.codes_.emplace(sym, code++);
  }

  // Double-array slot assignment in BFS order; the root owns slot 0.
  FreeList free_list;
  pma.base_.assign(1, -1);
  pma.check_.assign(1, kReserved);
  free_list.grow(pma.check_, 64);
  pma.base_.resize(pma.check_.size(), -1);

  std::vector<std::uint32_t> slot_of(trie.size(), 0);
  std::vector<std::uint32_t> bfs;  // trie node indices in assignment order
  bfs.reserve(trie.size());
  bfs.push_back(0);
  for (std::size_t q = 0; q < bfs.size(); ++q) {
    const std::uint32_t node = bfs[q];
    const std::uint32_t state = slot_of[node];
    if (trie[node].children.empty()) continue;

    std::vector<std::uint32_t> codes;
    codes.reserve(trie[node].children.size());
    for (const auto& [sym, child] : trie[node].children) codes.push_back(pma.codes_.at(sym));

    // First-fit: try bases that put the first child on a free cell.
    std::int32_t cell = free_list.head();
    std::uint32_t base = 0;
    for (;;) {
      if (cell < 0) {
        const std::size_t old = pma.check_.size();
        free_list.grow(pma.check_, old * 2);
        pma.base_.resize(pma.check_.size(), -1);
        cell = static_cast<std::int32_t>(old);
      }
      base = static_cast<std::uint32_t>(cell) ^ codes[0];
      bool ok = true;
      for (const std::uint32_t code : codes) {
        const std::uint32_t slot = base ^ code;
        if (slot >= pma.check_.size()) {
          free_list.grow(pma.check_, std::max<std::size_t>(slot + 1, pma.check_.size() * 2));
          pma.base_.resize(pma.check_.size(), -1);
        }
        if (pma.check_[slot] != kFree) {
          ok = false;
          break;
        }
      }
      if (ok) break;
      cell = free_list.next(cell);
    }

    pma.base_[state] = static_cast<std::int32_t>(base);
    for (const auto& [sym, child] : trie[node].children) {
      const std::uint32_t slot = base ^ pma.codes_.at(sym);
      pma.check_[slot] = static_cast<std::int32_t>(state);
      free_list.remove(static_cast<std::int32_t>(slot));
      slot_of[child] = slot;
      bfs.push_back(child);
    }
  }

  pma.num_states_ = static_cast<std::uint32_t>(trie.size());
  pma.patterns_ = std::move(patterns);

  // Failure links and suffix-output closure, in BFS order (fail targets are
  // always shallower, so they are ready when needed).
  pma.fail_.assign(pma.check_.size(), kRoot);
  std::vector<std::vector<Output>> out_lists(pma.check_.size());
  for (const std::uint32_t node : bfs) {
    const std::uint32_t state = slot_of[node];
    if (node != 0) {
      if (trie[node].pattern_id >= 0) {
        out_lists[state].push_back(
            {static_cast<std::uint32_t>(trie[node].pattern_id), trie[node].depth});
      }
      const auto& chain = out_lists[pma.fail_[state]];
      out_lists[state].insert(out_lists[state].end(), chain.begin(), chain.end());
    }
    for (const auto& [sym, child] : trie[node].children) {
      const std::uint32_t child_state = slot_of[child];
      if (node == 0) {
        pma.fail_[child_state] = kRoot;
      } else {
        std::uint32_t f = pma.fail_[state];
        std::uint32_t target = kRoot;
        for (;;) {
          const std::uint32_t next = pma.transition(f, sym);
          if (next != kNoTransition) {
            target = next;
            break;
          }
          if (f == kRoot) break;
          f = pma.fail_[f];
        }
        pma.fail_[child_state] = target;
      }
    }
  }

  pma.out_offsets_.assign(pma.check_.size() + 1, 0);
  std::size_t total = 0;
  for (std::size_t s = 0; s < out_lists.size(); ++s) {
    pma.out_offsets_[s] = total;
    total += out_lists[s].size();
  }
  pma.out_offsets_.back() = total;
  pma.out_entries_.reserve(total);
  for (const auto& list : out_lists) {
    pma.out_entries_.insert(pma.out_entries_.end(), list.begin(), list.end());
  }
  pma.payloads_.assign(pma.check_.size(), ScoreArray{});
  return pma;
}

std::vector<MatchEvent> PatternAutomaton::find_overlapping(std::u32string_view text) const {
  std::vector<MatchEvent> events;
  std::uint32_t state = kRoot;
  for (std::size_t i = 0; i < text.size(); ++i) {
    state = step(state, text[i]);
    for (const auto& out : outputs(state)) {
      events.push_back({out.pattern_id, i + 1 - out.length, i + 1});
    }
  }
  return events;
}

void PatternAutomaton::set_payload(std::uint32_t state, ScoreArray payload) {
  payloads_[state] = std::move(payload);
}

std::uint64_t PatternAutomaton::run_with_payload(std::u32string_view text,
                                                 std::span<std::int32_t> result) const {
  std::uint64_t additions = 0;
  std::uint32_t state = kRoot;
  for (std::size_t i = 0; i < text.size(); ++i) {
    state = step(state, text[i]);
    const ScoreArray& payload = payloads_[state];
    if (!payload.empty()) {
      add_score_array(result, static_cast<std::int64_t>(i) + 1, payload);
      ++additions;
    }
  }
  return additions;
}

}  // namespace pointseg

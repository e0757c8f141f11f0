#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "pointseg/errors.hpp"
#include "pointseg/pma.hpp"
#include "support/brute_force.hpp"
#include "support/generators.hpp"

using namespace pointseg;

namespace {

std::uint32_t walk(const PatternAutomaton& pma, std::u32string_view s) {
  std::uint32_t state = PatternAutomaton::kRoot;
  for (char32_t c : s) {
    state = pma.transition(state, c);
    REQUIRE(state != PatternAutomaton::kNoTransition);
  }
  return state;
}

std::vector<std::u32string> random_pattern_set(testsupport::Rng& rng, std::size_t count,
                                               std::size_t max_len, std::size_t alphabet) {
  std::set<std::u32string> set;
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  while (set.size() < count) set.insert(testsupport::random_text(rng, len(rng), alphabet));
  return {set.begin(), set.end()};
}

}  // namespace

TEST_CASE("nested suffix patterns report through failure chaining") {
  const auto pma = PatternAutomaton::build({U"界", U"世界", U"全世界"});
  CHECK(pma.num_states() == 7);  // root + 1 + 2 + 3

  const auto accept = walk(pma, U"全世界");
  const auto outs = pma.outputs(accept);
  REQUIRE(outs.size() == 3);
  // Longest first.
  CHECK(outs[0].length == 3);
  CHECK(outs[1].length == 2);
  CHECK(outs[2].length == 1);

  // Sorted pattern ids: 世界 < 全世界 < 界 by code point.
  CHECK(pma.patterns()[outs[0].pattern_id] == U"全世界");
  CHECK(pma.patterns()[outs[1].pattern_id] == U"世界");
  CHECK(pma.patterns()[outs[2].pattern_id] == U"界");
}

TEST_CASE("single unit pattern") {
  const auto pma = PatternAutomaton::build({U"a"});
  CHECK(pma.num_states() == 2);
  const auto events = pma.find_overlapping(U"baab");
  REQUIRE(events.size() == 2);
  CHECK(events[0] == MatchEvent{0, 1, 2});
  CHECK(events[1] == MatchEvent{0, 2, 3});
}

TEST_CASE("construction rejects bad inputs") {
  CHECK_THROWS_AS(PatternAutomaton::build({}), Error);
  CHECK_THROWS_AS(PatternAutomaton::build({U"a", U""}), Error);
  CHECK_THROWS_AS(PatternAutomaton::build({U"ab", U"ab"}), Error);
  try {
    PatternAutomaton::build({U"ab", U"ab"});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicatePattern);
  }
  try {
    PatternAutomaton::build({U"a", U""});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPattern);
  }
  try {
    PatternAutomaton::build({});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyPatternSet);
  }
}

TEST_CASE("overlapping matches in order: end ascending, length descending") {
  const auto pma = PatternAutomaton::build({U"界", U"世界", U"全世界"});
  const auto events = pma.find_overlapping(U"全世界の");
  REQUIRE(events.size() == 3);
  CHECK(events[0].begin == 0);
  CHECK(events[0].end == 3);
  CHECK(events[1].begin == 1);
  CHECK(events[1].end == 3);
  CHECK(events[2].begin == 2);
  CHECK(events[2].end == 3);

  CHECK(pma.find_overlapping(U"").empty());
  CHECK(pma.find_overlapping(U"のののの").empty());
}

TEST_CASE("find_overlapping equals brute force") {
  testsupport::Rng rng(42);
  for (int iter = 0; iter < 200; ++iter) {
    const auto patterns = random_pattern_set(rng, 2 + iter % 50, 1 + iter % 5, 4 + iter % 6);
    const auto pma = PatternAutomaton::build(patterns);
    const auto text = testsupport::random_text(rng, iter % 60, 4 + iter % 6);
    REQUIRE(pma.find_overlapping(text) == testsupport::brute_force_matches(patterns, text));
  }
}

TEST_CASE("outputs are exactly the registered suffixes") {
  testsupport::Rng rng(4242);
  for (int iter = 0; iter < 40; ++iter) {
    const auto patterns = random_pattern_set(rng, 2 + iter % 30, 1 + iter % 4, 3 + iter % 4);
    const auto pma = PatternAutomaton::build(patterns);
    const std::set<std::u32string> pattern_set(patterns.begin(), patterns.end());

    // Every state is some pattern prefix; enumerate them all.
    std::set<std::u32string> prefixes;
    for (const auto& p : patterns) {
      for (std::size_t n = 1; n <= p.size(); ++n) prefixes.insert(p.substr(0, n));
    }
    CHECK(pma.num_states() == prefixes.size() + 1);

    for (const auto& s : prefixes) {
      const auto outs = pma.outputs(walk(pma, s));
      std::vector<std::u32string> got;
      for (const auto& o : outs) {
        CHECK(o.length <= s.size());
        got.push_back(s.substr(s.size() - o.length));
        CHECK(pma.patterns()[o.pattern_id] == got.back());
      }
      std::vector<std::u32string> want;
      for (std::size_t n = s.size(); n >= 1; --n) {
        if (pattern_set.contains(s.substr(s.size() - n))) want.push_back(s.substr(s.size() - n));
      }
      REQUIRE(got == want);
    }
  }
}

TEST_CASE("failure links point to the longest proper suffix state") {
  testsupport::Rng rng(7);
  const auto patterns = random_pattern_set(rng, 25, 4, 3);
  const auto pma = PatternAutomaton::build(patterns);

  std::map<std::u32string, std::uint32_t> state_of;
  state_of[U""] = PatternAutomaton::kRoot;
  for (const auto& p : patterns) {
    for (std::size_t n = 1; n <= p.size(); ++n) {
      state_of[p.substr(0, n)] = walk(pma, p.substr(0, n));
    }
  }
  for (const auto& [s, state] : state_of) {
    if (s.empty()) continue;
    std::uint32_t expected = PatternAutomaton::kRoot;
    std::size_t expected_depth = 0;
    for (std::size_t drop = 1; drop <= s.size(); ++drop) {
      const auto suffix = s.substr(drop);
      if (auto it = state_of.find(suffix); it != state_of.end()) {
        expected = it->second;
        expected_depth = suffix.size();
        break;
      }
    }
    CHECK(pma.fail(state) == expected);
    CHECK(expected_depth < s.size());  // fail strictly decreases depth
  }
}

TEST_CASE("transition lookup is a constant number of array probes") {
  testsupport::Rng rng(11);
  // Large alphabet on purpose.
  const auto patterns = random_pattern_set(rng, 300, 4, 900);
  const auto pma = PatternAutomaton::build(patterns);

  unsigned worst = 0;
  std::uint32_t state = PatternAutomaton::kRoot;
  const auto text = testsupport::random_text(rng, 2000, 900);
  for (char32_t c : text) {
    unsigned probes = 0;
    const auto next = pma.transition(state, c, &probes);
    CHECK(probes <= 2);
    worst = std::max(worst, probes);
    state = next == PatternAutomaton::kNoTransition ? pma.step(state, c) : next;
  }
  CHECK(worst == 2);
}

TEST_CASE("construction is order-independent") {
  testsupport::Rng rng(5);
  auto patterns = random_pattern_set(rng, 30, 4, 5);
  const auto reference = PatternAutomaton::build(patterns);
  for (int shuffle = 0; shuffle < 5; ++shuffle) {
    std::shuffle(patterns.begin(), patterns.end(), rng);
    CHECK(PatternAutomaton::build(patterns) == reference);
  }
}

TEST_CASE("run_with_payload adds the active state's payload once per position") {
  auto pma = PatternAutomaton::build({U"ab", U"b"});
  // Payload on the "ab" accept state: start_offset -1, weights {10, 1}.
  pma.set_payload(walk(pma, U"ab"), {-1, {10, 1}});

  std::vector<std::int32_t> scores(3, 0);  // text "xabc": boundaries 1..3
  const auto additions = pma.run_with_payload(U"xabc", scores);
  CHECK(additions == 1);
  // "ab" ends at position 3; start -1 puts the weights on boundaries 2 and 3.
  CHECK(scores == std::vector<std::int32_t>{0, 10, 1});

  std::vector<std::int32_t> none(3, 0);
  CHECK(pma.run_with_payload(U"xxxx", none) == 0);
  CHECK(none == std::vector<std::int32_t>{0, 0, 0});
}

TEST_CASE("payload clipping at the edges") {
  auto pma = PatternAutomaton::build({U"a"});
  pma.set_payload(walk(pma, U"a"), {-3, {1, 2, 3, 4, 5, 6}});
  std::vector<std::int32_t> scores(1, 0);  // text "aa": single boundary
  const auto additions = pma.run_with_payload(U"aa", scores);
  CHECK(additions == 2);
  // First match (end 1): only weights for boundary 1 fit: index 3 -> 4.
  // Second match (end 2): index 2 -> 3.
  CHECK(scores == std::vector<std::int32_t>{7});
}

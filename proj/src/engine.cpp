#include "pointseg/engine.hpp"

#include <algorithm>
#include <limits>

#include "pointseg/errors.hpp"

namespace pointseg {

namespace {

std::int32_t checked_int32(std::int64_t value, const char* what) {
  if (value < std::numeric_limits<std::int32_t>::min() ||
      value > std::numeric_limits<std::int32_t>::max()) {
    throw Error(ErrorKind::Overflow, what);
  }
  return static_cast<std::int32_t>(value);
}

std::uint64_t l1_norm(const std::vector<std::int32_t>& weights) {
  std::uint64_t total = 0;
  for (std::int32_t w : weights) total += static_cast<std::uint64_t>(w < 0 ? -static_cast<std::int64_t>(w) : w);
  return total;
}

// Worst-case absolute accumulation onto a single boundary: every pattern
// occurring at every placement at once.
void check_accumulation_bound(const RawModel& model) {
  std::uint64_t bound = static_cast<std::uint64_t>(
      model.bias < 0 ? -static_cast<std::int64_t>(model.bias) : model.bias);
  for (const auto& [pattern, weights] : model.char_ngrams) bound += l1_norm(weights);
  for (const auto& [pattern, weights] : model.type_ngrams) bound += l1_norm(weights);
  for (const auto& entry : model.dict) {
    const auto mag = [](std::int32_t w) {
      return static_cast<std::uint64_t>(w < 0 ? -static_cast<std::int64_t>(w) : w);
    };
    bound += mag(entry.weight_left) + mag(entry.weight_right) +
             mag(entry.weight_inside) * (entry.word.size() - 1);
  }
  if (bound > static_cast<std::uint64_t>(std::numeric_limits<std::int32_t>::max())) {
    throw Error(ErrorKind::Overflow,
                "worst-case boundary accumulation " + std::to_string(bound) + " exceeds int32");
  }
}

// Dictionary contribution of one word occurrence as offsets from the match
// end k: L at k-l, I at k-l+1 .. k-1, R at k.
void add_dict_contribution(std::vector<std::int64_t>& acc, std::int32_t span_start,
                           const DictEntry& entry) {
  const auto l = static_cast<std::int64_t>(entry.word.size());
  const std::size_t base = static_cast<std::size_t>(-l - span_start);
  acc[base] += entry.weight_left;
  for (std::int64_t t = 1; t < l; ++t) acc[base + static_cast<std::size_t>(t)] += entry.weight_inside;
  acc[base + static_cast<std::size_t>(l)] += entry.weight_right;
}

struct TypeCacheFiller {
  const PatternAutomaton& pma;
  const std::vector<const std::vector<std::int32_t>*>& arrays;
  std::vector<std::int32_t>& table;
  std::uint32_t two_w;

  void fill(std::uint32_t depth, std::uint32_t state, std::uint64_t id, std::int64_t acc) {
    if (depth == two_w) {
      table[id] = checked_int32(acc, "type cache entry exceeds int32");
      return;
    }
    for (std::uint32_t code = 0; code <= 6; ++code) {
      const std::uint32_t next = pma.step(state, static_cast<char32_t>(code));
      std::int64_t acc_next = acc;
      for (const auto& out : pma.outputs(next)) {
        // Occurrence ends at window slot `depth`; its weight for the window
        // center boundary sits at array index 2W - depth - 1.
        acc_next += (*arrays[out.pattern_id])[two_w - depth - 1];
      }
      fill(depth + 1, next, (id << 3) | code, acc_next);
    }
  }
};

}  // namespace

std::optional<EngineConfig> EngineConfig::from_name(std::string_view name) {
  EngineConfig config;
  std::string_view base = name;
  std::optional<DictMode> dict_override;
  if (auto pos = name.find('+'); pos != std::string_view::npos) {
    base = name.substr(0, pos);
    const std::string_view suffix = name.substr(pos + 1);
    if (suffix == "short") {
      dict_override = DictMode::Short;
    } else if (suffix == "all") {
      dict_override = DictMode::All;
    } else if (suffix == "separate") {
      dict_override = DictMode::Separate;
    } else {
      return std::nullopt;
    }
  }
  if (base == "a") {
    config = {false, DictMode::Separate, false};
  } else if (base == "b") {
    config = {true, DictMode::Separate, false};
  } else if (base == "c") {
    config = {false, DictMode::All, false};
  } else if (base == "d") {
    config = {false, DictMode::Separate, true};
  } else if (base == "e") {
    config = {true, DictMode::All, true};
  } else {
    return std::nullopt;
  }
  if (dict_override) config.dict_mode = *dict_override;
  return config;
}

std::uint64_t sequence_id_direct(std::span<const std::uint32_t> padded_codes, std::int64_t index,
                                 std::uint32_t window) {
  std::uint64_t id = 0;
  const auto w = static_cast<std::int64_t>(window);
  for (std::int64_t k = 0; k < 2 * w; ++k) {
    const std::int64_t p = index - w + k;
    const std::uint32_t code =
        (p >= 0 && p < static_cast<std::int64_t>(padded_codes.size())) ? padded_codes[static_cast<std::size_t>(p)] : 0;
    id = (id << 3) | code;
  }
  return id;
}

std::vector<std::int32_t> build_type_cache(const RawModel& model) {
  const std::uint32_t w = model.window;
  if (w > 4) {
    throw Error(ErrorKind::CacheTooLarge,
                "type cache needs 2^" + std::to_string(6 * w) + " entries; window must be <= 4");
  }
  std::vector<std::int32_t> table(std::size_t{1} << (6 * w), 0);
  if (model.type_ngrams.empty()) return table;

  std::vector<std::u32string> patterns;
  std::vector<const std::vector<std::int32_t>*> arrays;
  patterns.reserve(model.type_ngrams.size());
  for (const auto& [pattern, weights] : model.type_ngrams) patterns.push_back(pattern);
  const PatternAutomaton pma = PatternAutomaton::build(patterns);
  arrays.reserve(pma.patterns().size());
  for (const auto& pattern : pma.patterns()) arrays.push_back(&model.type_ngrams.at(pattern));

  TypeCacheFiller filler{pma, arrays, table, 2 * w};
  filler.fill(0, PatternAutomaton::kRoot, 0, 0);
  return table;
}

CompiledEngine CompiledEngine::compile(RawModel model, EngineConfig config) {
  model.validate();
  if (config.type_cache && model.window > 4) {
    throw Error(ErrorKind::CacheTooLarge,
                "type cache needs 2^" + std::to_string(6 * model.window) +
                    " entries; window must be <= 4");
  }
  check_accumulation_bound(model);

  CompiledEngine engine;
  engine.model_ = std::move(model);
  engine.config_ = config;
  const RawModel& m = engine.model_;
  const auto w = static_cast<std::int32_t>(m.window);

  const auto integrated = [&](const DictEntry& entry) {
    switch (config.dict_mode) {
      case DictMode::Separate: return false;
      case DictMode::Short: return entry.word.size() <= m.window;
      case DictMode::All: return true;
    }
    return false;
  };

  // Character-side pattern set: n-grams plus integrated dictionary words.
  std::vector<std::u32string> char_patterns;
  char_patterns.reserve(m.char_ngrams.size());
  for (const auto& [pattern, weights] : m.char_ngrams) char_patterns.push_back(pattern);
  for (const auto& entry : m.dict) {
    if (integrated(entry) && !m.char_ngrams.contains(entry.word)) {
      char_patterns.push_back(entry.word);
    }
  }

  if (!char_patterns.empty()) {
    engine.char_pma_.emplace(PatternAutomaton::build(std::move(char_patterns)));
    auto& pma = *engine.char_pma_;

    // Per-pattern lookups into the model.
    const std::size_t n_patterns = pma.patterns().size();
    std::vector<const std::vector<std::int32_t>*> ngram_of(n_patterns, nullptr);
    std::vector<const DictEntry*> dict_of(n_patterns, nullptr);
    for (std::size_t pid = 0; pid < n_patterns; ++pid) {
      const auto& pattern = pma.patterns()[pid];
      if (auto it = m.char_ngrams.find(pattern); it != m.char_ngrams.end()) {
        ngram_of[pid] = &it->second;
      }
      auto it = std::lower_bound(
          m.dict.begin(), m.dict.end(), pattern,
          [](const DictEntry& e, const std::u32string& word) { return e.word < word; });
      if (it != m.dict.end() && it->word == pattern && integrated(*it)) dict_of[pid] = &*it;
    }

    if (!config.merge_char_scores) {
      engine.char_arrays_.resize(n_patterns);
      for (std::size_t pid = 0; pid < n_patterns; ++pid) {
        if (ngram_of[pid]) engine.char_arrays_[pid] = ScoreArray{-w, *ngram_of[pid]};
      }
    }

    // State payloads: merged n-gram partial sums (merge on), merged
    // dictionary contributions (dictionary integration), or both.
    const bool dict_integration = config.dict_mode != DictMode::Separate;
    if (config.merge_char_scores || dict_integration) {
      for (std::uint32_t state = 0; state < pma.table_size(); ++state) {
        const auto outs = pma.outputs(state);
        if (outs.empty()) continue;

        std::int64_t l_max_dict = 0;
        std::int64_t n_min_ngram = 0;
        bool any = false;
        for (const auto& out : outs) {
          if (dict_of[out.pattern_id]) {
            l_max_dict = std::max(l_max_dict, static_cast<std::int64_t>(out.length));
            any = true;
          }
          if (config.merge_char_scores && ngram_of[out.pattern_id]) {
            n_min_ngram = n_min_ngram == 0 ? out.length
                                           : std::min<std::int64_t>(n_min_ngram, out.length);
            any = true;
          }
        }
        if (!any) continue;

        const std::int32_t start = -static_cast<std::int32_t>(std::max<std::int64_t>(w, l_max_dict));
        const std::int32_t end = l_max_dict > 0 ? w - 1
                                 : n_min_ngram > 0
                                     ? w - static_cast<std::int32_t>(n_min_ngram)
                                     : w - 1;
        std::vector<std::int64_t> acc(static_cast<std::size_t>(end - start + 1), 0);
        for (const auto& out : outs) {
          if (config.merge_char_scores && ngram_of[out.pattern_id]) {
            const auto& arr = *ngram_of[out.pattern_id];
            const std::size_t off = static_cast<std::size_t>(-w - start);
            for (std::size_t t = 0; t < arr.size(); ++t) acc[off + t] += arr[t];
          }
          if (dict_of[out.pattern_id]) add_dict_contribution(acc, start, *dict_of[out.pattern_id]);
        }
        ScoreArray payload{start, {}};
        payload.weights.reserve(acc.size());
        for (std::int64_t v : acc) {
          payload.weights.push_back(checked_int32(v, "state payload exceeds int32"));
        }
        pma.set_payload(state, std::move(payload));
      }
    }
  }

  // Type side: cache table or automaton.
  if (config.type_cache) {
    engine.type_cache_ = build_type_cache(m);
  } else if (!m.type_ngrams.empty()) {
    std::vector<std::u32string> patterns;
    patterns.reserve(m.type_ngrams.size());
    for (const auto& [pattern, weights] : m.type_ngrams) patterns.push_back(pattern);
    engine.type_pma_.emplace(PatternAutomaton::build(std::move(patterns)));
    engine.type_arrays_.resize(engine.type_pma_->patterns().size());
    for (std::size_t pid = 0; pid < engine.type_pma_->patterns().size(); ++pid) {
      engine.type_arrays_[pid] = ScoreArray{-w, m.type_ngrams.at(engine.type_pma_->patterns()[pid])};
    }
  }

  // Dictionary side: whatever is not integrated keeps its own automaton.
  std::vector<std::u32string> dict_patterns;
  for (const auto& entry : m.dict) {
    if (!integrated(entry)) dict_patterns.push_back(entry.word);
  }
  if (!dict_patterns.empty()) {
    engine.dict_pma_.emplace(PatternAutomaton::build(std::move(dict_patterns)));
    engine.dict_arrays_.resize(engine.dict_pma_->patterns().size());
    for (std::size_t pid = 0; pid < engine.dict_pma_->patterns().size(); ++pid) {
      const auto& word = engine.dict_pma_->patterns()[pid];
      const auto it = std::lower_bound(
          m.dict.begin(), m.dict.end(), word,
          [](const DictEntry& e, const std::u32string& s) { return e.word < s; });
      const auto l = static_cast<std::int32_t>(word.size());
      ScoreArray arr{-l, std::vector<std::int32_t>(static_cast<std::size_t>(l) + 1, it->weight_inside)};
      arr.weights.front() = it->weight_left;
      arr.weights.back() = it->weight_right;
      engine.dict_arrays_[pid] = std::move(arr);
    }
  }
  return engine;
}

SegmentationResult CompiledEngine::score(std::u32string_view text, Subroutines passes) const {
  SegmentationResult result;
  const std::size_t n_chars = text.size();
  if (n_chars == 0) {
    finalize_result(result, 0);
    return result;
  }
  result.scores.assign(n_chars - 1, model_.bias);
  const std::span<std::int32_t> y(result.scores);

  if (passes.char_ngrams && char_pma_) {
    if (config_.merge_char_scores) {
      result.counters.char_arrays_summed += char_pma_->run_with_payload(text, y);
    } else {
      std::uint32_t state = PatternAutomaton::kRoot;
      for (std::size_t i = 0; i < n_chars; ++i) {
        state = char_pma_->step(state, text[i]);
        const auto end_pos = static_cast<std::int64_t>(i) + 1;
        for (const auto& out : char_pma_->outputs(state)) {
          const ScoreArray& arr = char_arrays_[out.pattern_id];
          if (!arr.empty()) {
            add_score_array(y, end_pos, arr);
            ++result.counters.char_arrays_summed;
          }
        }
        if (const ScoreArray* payload = char_pma_->payload(state)) {
          add_score_array(y, end_pos, *payload);
          ++result.counters.char_arrays_summed;
        }
      }
    }
  }

  if (passes.type_ngrams) {
    if (config_.type_cache) {
      const std::uint32_t w = model_.window;
      std::uint64_t id = sequence_id_init();
      const auto n = static_cast<std::int64_t>(n_chars);
      for (std::int64_t i = 1 - static_cast<std::int64_t>(w); i <= n - 1; ++i) {
        const std::int64_t p = i + w - 1;  // incoming character position
        const std::uint32_t code =
            p < n ? model_.type_codes[static_cast<std::size_t>(classify_char(text[static_cast<std::size_t>(p)]))]
                  : 0;
        id = sequence_id_step(id, code, w);
        if (i >= 1) {
          y[static_cast<std::size_t>(i - 1)] += type_cache_[id];
          ++result.counters.type_cache_lookups;
        }
      }
    } else if (type_pma_) {
      const std::u32string codes = type_code_sequence(text, model_.type_codes);
      std::uint32_t state = PatternAutomaton::kRoot;
      for (std::size_t i = 0; i < codes.size(); ++i) {
        state = type_pma_->step(state, codes[i]);
        for (const auto& out : type_pma_->outputs(state)) {
          add_score_array(y, static_cast<std::int64_t>(i) + 1, type_arrays_[out.pattern_id]);
          ++result.counters.type_arrays_summed;
        }
      }
    }
  }

  if (passes.dict_words && dict_pma_) {
    std::uint32_t state = PatternAutomaton::kRoot;
    for (std::size_t i = 0; i < n_chars; ++i) {
      state = dict_pma_->step(state, text[i]);
      for (const auto& out : dict_pma_->outputs(state)) {
        add_score_array(y, static_cast<std::int64_t>(i) + 1, dict_arrays_[out.pattern_id]);
        ++result.counters.dict_arrays_summed;
      }
    }
  }

  finalize_result(result, n_chars);
  return result;
}

}  // namespace pointseg

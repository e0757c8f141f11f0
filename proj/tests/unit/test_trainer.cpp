#include <doctest.h>

#include "pointseg/engine.hpp"
#include "pointseg/errors.hpp"
#include "pointseg/eval.hpp"
#include "pointseg/model_io.hpp"
#include "pointseg/naive_scorer.hpp"
#include "pointseg/trainer.hpp"
#include "support/generators.hpp"

using namespace pointseg;

namespace {

std::vector<Segmented> predict_all(const CompiledEngine& engine,
                                   const std::vector<Segmented>& gold) {
  std::vector<Segmented> out;
  out.reserve(gold.size());
  for (const auto& s : gold) {
    const auto r = engine.tokenize(s.text);
    out.push_back({s.text, r.boundaries});
  }
  return out;
}

}  // namespace

TEST_CASE("a separable toy corpus is fit to 100% training accuracy") {
  // Boundary exactly before every kanji starter.
  testsupport::Rng rng(12);
  const testsupport::RuleCorpus rules(rng, 30);
  const auto corpus = rules.corpus(rng, 60);

  const auto trained = train(corpus, {}, {});
  const auto engine = CompiledEngine::compile(trained.model, *EngineConfig::from_name("e"));
  CHECK(boundary_error_rate(corpus, predict_all(engine, corpus)) == 0.0);
}

TEST_CASE("held-out accuracy on a rule-generated corpus") {
  testsupport::Rng rng(99);
  const testsupport::RuleCorpus rules(rng, 60);
  const auto train_set = rules.corpus(rng, 200);
  const auto held_out = rules.corpus(rng, 60);

  const auto trained = train(train_set, {}, {});
  const auto engine = CompiledEngine::compile(trained.model, *EngineConfig::from_name("e"));
  const auto pred = predict_all(engine, held_out);
  CHECK(word_f1(held_out, pred).f1 >= 0.95);
  CHECK(boundary_error_rate(held_out, pred) <= 0.02);
}

TEST_CASE("stronger regularization never grows the model") {
  testsupport::Rng rng(5);
  const testsupport::RuleCorpus rules(rng, 40);
  const auto corpus = rules.corpus(rng, 120);

  std::size_t previous = 0;
  for (const double c : {0.01, 0.1, 1.0}) {
    TrainConfig config;
    config.penalty_c = c;
    const auto out = train(corpus, {}, config);
    CHECK(out.weights_stored >= previous);
    previous = out.weights_stored;
  }
  CHECK(previous > 0);
}

TEST_CASE("empty corpus is rejected") {
  CHECK_THROWS_AS(train({}, {}, {}), Error);
  // Single-character sentences carry no boundary examples.
  const std::vector<Segmented> no_boundaries = {parse_gold_line("a"), parse_gold_line("b")};
  try {
    train(no_boundaries, {}, {});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EmptyCorpus);
  }
}

TEST_CASE("config validation") {
  const std::vector<Segmented> corpus = {parse_gold_line("ab cd")};
  TrainConfig bad;
  bad.penalty_c = 0.0;
  CHECK_THROWS_AS(train(corpus, {}, bad), Error);
  bad = {};
  bad.window = 0;
  CHECK_THROWS_AS(train(corpus, {}, bad), Error);
}

TEST_CASE("training is deterministic") {
  testsupport::Rng rng(3);
  const testsupport::RuleCorpus rules(rng, 20);
  const auto corpus = rules.corpus(rng, 40);
  std::vector<std::u32string> dict = {U"丁あ", U"丂"};

  const auto first = train(corpus, dict, {});
  const auto second = train(corpus, dict, {});
  CHECK(first.model == second.model);
  CHECK(save_model(first.model) == save_model(second.model));
}

TEST_CASE("explicit zero weights contribute nothing") {
  testsupport::Rng rng(8);
  const testsupport::RuleCorpus rules(rng, 20);
  const auto corpus = rules.corpus(rng, 30);
  const auto trained = train(corpus, {}, {});

  RawModel padded = trained.model;
  padded.char_ngrams[U"ぱどだ"] = {0, 0, 0, 0};  // all-zero array
  padded.dict.insert(padded.dict.begin(), {U"ぁぁ", 0, 0, 0});
  padded.validate();

  for (int i = 0; i < 20; ++i) {
    const auto text = rules.sentence(rng).text;
    CHECK(score_naive(padded, text).scores == score_naive(trained.model, text).scores);
    CHECK(CompiledEngine::compile(padded, *EngineConfig::from_name("e")).score(text).scores ==
          CompiledEngine::compile(trained.model, *EngineConfig::from_name("e")).score(text).scores);
  }
}

TEST_CASE("a dictionary adds per-word L/I/R features to the problem") {
  testsupport::Rng rng(21);
  const testsupport::RuleCorpus rules(rng, 25);
  const auto corpus = rules.corpus(rng, 80);
  std::vector<std::u32string> dict(rules.vocab().begin(), rules.vocab().begin() + 10);

  const auto without = train(corpus, {}, {});
  const auto with = train(corpus, dict, {});
  CHECK(with.features_seen > without.features_seen);
}

// Copyright 2026 The picoir Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "picoir/corpus.hpp"
#include "picoir/errors.hpp"
#include "picoir/fixture.hpp"
#include "extraction_cases.hpp"
#include "picoir/pico.hpp"

using namespace picoir;
using namespace picoir::pico;
using namespace picoir::testing;

TEST_CASE("extract_spans on hand-constructed label sequences") {
  REQUIRE(kCases.size() == 50);
  for (const auto& c : kCases) {
    CAPTURE(c.words);
    CAPTURE(c.labels);
    const auto tokens = make_tokens(c.words);
    const auto labels = make_labels(c.labels);
    REQUIRE(tokens.size() == labels.size());
    const auto r = extract_spans(tokens, labels);
    CHECK(texts(r.population) == c.p);
    CHECK(texts(r.intervention_comparator) == c.i);
    CHECK(texts(r.outcome) == c.o);
  }
}

TEST_CASE("label runs carry token ranges") {
  const auto tokens = make_tokens("a b c d e");
  const auto runs = label_runs(tokens, make_labels("PP.OO"));
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].label == PicoLabel::kPopulation);
  CHECK(runs[0].token_start == 0);
  CHECK(runs[0].token_end == 2);
  CHECK(runs[1].label == PicoLabel::kOutcome);
  CHECK(runs[1].token_start == 3);
  CHECK(runs[1].token_end == 5);
  CHECK_THROWS_AS(label_runs(tokens, make_labels("PP")), InvalidArgument);
}

TEST_CASE("extraction json") {
  const auto tokens = make_tokens("a b");
  const auto j = to_json(extract_spans(tokens, make_labels("P.")), std::string("d1"));
  CHECK(j["doc_id"] == "d1");
  CHECK(j["population"][0]["text"] == "a");
  CHECK(j["outcome"].empty());
  CHECK(to_json(ExtractionResult{})["doc_id"].is_null());
}

TEST_CASE("prostate trial gold extraction") {
  const auto d = fixture::prostate_trial();
  const auto r = extract_spans(d.tokens, d.labels);
  CHECK(std::find(texts(r.population).begin(), texts(r.population).end(),
                  "patients with locally advanced prostate cancer") !=
        texts(r.population).end());
  CHECK(texts(r.outcome) ==
        V{"overall survival", "deaths from prostate cancer",
          "frequency of adverse events related to bowel toxicity"});
}

TEST_CASE("one-hot window features") {
  const auto d = fixture::from_markup("d", "Men with [P heart failure] took a pill.");
  const TokenFeatureConfig cfg{1, true, true, TokenBackend::kOneHot, 1};
  const TokenFeaturizer f(cfg, token_vocabulary({d}, 1));
  const std::size_t v = f.vocabulary().size();
  CHECK(f.block_size() == v + 1);
  CHECK(f.block_count() == 3);
  CHECK(f.dimension() == 3 * (v + 1) + 1 + TokenFeatureConfig::kPositionBins);
  // "Men" is token 0: centre and right blocks, casing, first position bin.
  const auto x = f.features(d, 0);
  const auto idx = x.indices();
  const std::size_t men = *f.vocabulary().index("men");
  const std::size_t with = *f.vocabulary().index("with");
  CHECK(idx.size() == 4);
  CHECK(std::count(idx.begin(), idx.end(), men) == 1);
  CHECK(std::count(idx.begin(), idx.end(), 2 * (v + 1) + with) == 1);
  CHECK(std::count(idx.begin(), idx.end(), 3 * (v + 1)) == 1);
  CHECK(std::count(idx.begin(), idx.end(), 3 * (v + 1) + 1) == 1);
  CHECK_THROWS_AS(f.features(d, d.tokens.size()), InvalidArgument);

  const auto other = fixture::from_markup("e", "Unseen words appear.");
  const auto y = f.features(other, 1);
  CHECK(y.indices()[0] == v);  // out-of-vocabulary slot of the centre block
}

TEST_CASE("window size is bounded") {
  TokenFeatureConfig cfg;
  cfg.window = 6;
  const auto d = fixture::prostate_trial();
  CHECK_THROWS_AS(TokenFeaturizer(cfg, token_vocabulary({d}, 1)), InvalidArgument);
}

TEST_CASE("tagger learns a separable toy task and round trips") {
  Corpus train;
  for (int i = 0; i < 20; ++i) {
    train.push_back(fixture::from_markup(
        "t" + std::to_string(i),
        "Title\n[P Adults with asthma] received [I drug " + std::to_string(i % 3) +
            "] and [O symptom scores] improved."));
  }
  const TokenFeatureConfig cfg{1, true, false, TokenBackend::kOneHot, 1};
  const auto r = train_pico(train, cfg, TrainHyper{20, 0.5, 1e-4, 1, 16});
  const auto report = evaluate_pico(r.tagger, train);
  CHECK(report.micro.f1 > 0.95);
  CHECK(report.documents == 20);
  const auto back = PicoTagger::from_json(r.tagger.to_json());
  CHECK(back.to_json().dump() == r.tagger.to_json().dump());
  CHECK(predict_labels(back, train[0]) == predict_labels(r.tagger, train[0]));

  Corpus no_outcome = {fixture::from_markup("n", "[P a] [I b] c")};
  CHECK_THROWS_WITH_AS(train_pico(no_outcome, cfg, TrainHyper{}),
                       "training data has no tokens of class: outcome", InvalidArgument);
}

TEST_CASE("evaluation counts tokens and exact spans") {
  Corpus gold = {fixture::from_markup("g", "[P a b] c [O d]")};
  std::vector<std::vector<PicoLabel>> pred = {make_labels("PP.P")};
  const auto r = evaluate_labels(gold, pred);
  CHECK(r.tokens.confusion.at(3, 1) == 1);
  CHECK(r.tokens.metrics.accuracy == doctest::Approx(0.75));
  // One of two predicted spans exactly matches one of two gold spans.
  CHECK(r.spans.precision == doctest::Approx(0.5));
  CHECK(r.spans.recall == doctest::Approx(0.5));
  CHECK(r.micro.precision == doctest::Approx(2.0 / 3.0));
  CHECK(r.micro.recall == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("markup parser errors") {
  CHECK_THROWS_AS(fixture::from_markup("x", "[P a [I b]]"), InvalidArgument);
  CHECK_THROWS_AS(fixture::from_markup("x", "[Q a]"), InvalidArgument);
  CHECK_THROWS_AS(fixture::from_markup("x", "[P a"), InvalidArgument);
}

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

#include <cmath>

#include "picoir/encoder.hpp"
#include "picoir/errors.hpp"
#include "picoir/fixture.hpp"
#include "picoir/querygen.hpp"
#include "picoir/stopwords.hpp"

using namespace picoir;
using namespace picoir::encoder;

TEST_CASE("idf uses the smoothed form") {
  const auto v = build_vocab(std::vector<std::string>{"aspirin stroke", "stroke trial"});
  REQUIRE(v.size() == 3);
  CHECK(v.term(0) == "aspirin");
  CHECK(v.df(*v.index("stroke")) == 2);
  CHECK(v.idf(*v.index("aspirin")) == doctest::Approx(1.4054651081081644).epsilon(1e-12));
  CHECK(v.idf(*v.index("stroke")) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tf-idf vectors are l2 normalised") {
  const auto v = build_vocab(std::vector<std::string>{"aspirin stroke", "stroke trial"});
  const auto x = encode_tfidf("Aspirin aspirin STROKE unknownterm", v);
  REQUIRE(x.nnz() == 2);
  const auto dense = x.to_dense();
  CHECK(dense[*v.index("aspirin")] == doctest::Approx(0.9421556246632359).epsilon(1e-12));
  CHECK(dense[*v.index("stroke")] == doctest::Approx(0.33517574332792605).epsilon(1e-12));
  CHECK(x.norm() == doctest::Approx(1.0).epsilon(1e-12));
  const double c = cosine(encode_tfidf("aspirin stroke", v), encode_tfidf("stroke trial", v));
  CHECK(c == doctest::Approx(0.33609692727625745).epsilon(1e-12));
  CHECK(encode_tfidf("nothing known", v).nnz() == 0);
}

TEST_CASE("min_df drops rare terms") {
  const auto v = build_vocab(std::vector<std::string>{"a b", "b c", "b d"}, 2);
  REQUIRE(v.size() == 1);
  CHECK(v.term(0) == "b");
}

TEST_CASE("sparse vector rejects bad entries") {
  CHECK_THROWS_AS(SparseVector(3, {{3, 1.0}}), InvalidArgument);
  CHECK_THROWS_AS(SparseVector(3, {{1, 1.0}, {1, 2.0}}), InvalidArgument);
  CHECK_THROWS_AS(SparseVector(3, {{1, NAN}}), InvalidArgument);
  const SparseVector a(4, {{2, 3.0}, {0, 1.0}});
  CHECK(a.indices() == std::vector<std::uint32_t>{0, 2});
  CHECK(a.dot(SparseVector(4, {{2, 2.0}, {3, 5.0}})) == 6.0);
}

TEST_CASE("terms are case folded and keywords drop stopwords") {
  CHECK(terms("The Aspirin, and THE placebo") ==
        std::vector<std::string>{"the", "aspirin", "and", "the", "placebo"});
  CHECK(keywords(terms("The Aspirin, and THE placebo")) ==
        std::vector<std::string>{"aspirin", "placebo"});
  CHECK(is_stopword("with"));
  CHECK_FALSE(is_stopword("stroke"));
}

TEST_CASE("query keywords ignore clause labels of templated queries") {
  const std::string q = querygen::render_query({"adults with stroke", "", "outcome scores"});
  CHECK(q == "population: adults with stroke; outcome: outcome scores");
  CHECK(query_keywords(q) == std::vector<std::string>{"adults", "outcome", "scores", "stroke"});
  CHECK(query_keywords("population growth") ==
        std::vector<std::string>{"growth", "population"});
}

TEST_CASE("tf-idf pair features") {
  const Corpus c = {fixture::prostate_trial()};
  const auto enc = PairEncoder::tfidf(build_vocab(c));
  const std::string q = querygen::render_query({"locally advanced prostate cancer", "", ""});
  const auto f = enc.encode(q, c[0]).features.to_dense();
  REQUIRE(f.size() == enc.dimension());
  CHECK(f[kCosine] > 0.0);
  CHECK(f[kQueryCoverage] == 1.0);
  CHECK(f[kPopulationCoverage] == 1.0);
  // Absent clauses count as covered.
  CHECK(f[kInterventionCoverage] == 1.0);
  CHECK(f[kOutcomeCoverage] == 1.0);
  CHECK(f[kMinClauseCoverage] == 1.0);
  const auto g = enc.encode(querygen::render_query({"children with autism", "", ""}), c[0])
                     .features.to_dense();
  CHECK(g[kPopulationCoverage] < 1.0);
  CHECK(g[kMinClauseCoverage] == g[kPopulationCoverage]);
  CHECK(g[kQueryLength] == doctest::Approx(std::log1p(4.0) / std::log1p(512.0)));
}

TEST_CASE("documents are truncated to 512 terms") {
  std::string text;
  for (int i = 0; i < 600; ++i) text += "word" + std::to_string(i) + " ";
  AnnotatedDocument d;
  d.id = "long";
  d.abstract = text;
  const auto enc = PairEncoder::tfidf(build_vocab(std::vector<std::string>{text}));
  const auto e = enc.encode_document(d);
  CHECK(e.length == kMaxInputTokens);
  CHECK(e.tfidf.nnz() == kMaxInputTokens);
}

TEST_CASE("dense backend requires embeddings for both sides") {
  EmbeddingTable t;
  t.add("d1", {1.0, 0.0});
  const std::string q = "some query";
  t.add(query_embedding_id(q), {0.6, 0.8});
  const auto enc = PairEncoder::dense(t);
  AnnotatedDocument d;
  d.id = "d1";
  d.abstract = "x";
  const auto f = enc.encode(q, d);
  CHECK(f.backend == Backend::kDense);
  CHECK(f.features.dimension() == enc.dimension());
  AnnotatedDocument other = d;
  other.id = "d2";
  CHECK_THROWS_AS(enc.encode(q, other), MissingEmbedding);
  CHECK_THROWS_AS(enc.encode("unseen", d), MissingEmbedding);
  CHECK_THROWS_AS(t.add("bad", {1.0}), InvalidArgument);
}

TEST_CASE("vocabulary json round trip") {
  const auto v = build_vocab(std::vector<std::string>{"a b", "b c"});
  CHECK(Vocabulary::from_json(v.to_json()) == v);
}

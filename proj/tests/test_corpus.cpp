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

#include <filesystem>
#include <sstream>

#include "picoir/corpus.hpp"
#include "picoir/errors.hpp"
#include "picoir/fixture.hpp"

using namespace picoir;
namespace fs = std::filesystem;

static const fs::path kMini = fs::path(PICOIR_TEST_DATA) / "ebm_mini";

TEST_CASE("import reads the three-document release") {
  const auto r = corpus::import_ebm_nlp(kMini);
  REQUIRE(r.documents.size() == 3);
  CHECK(r.documents[0].id == "1001");
  CHECK(r.documents[1].id == "1002");
  CHECK(r.documents[2].id == "1003");
  CHECK(r.withheld_ids == std::vector<std::string>{"1002"});

  const auto& d = r.documents[0];
  CHECK(d.title == "Aspirin for stroke prevention.");
  REQUIRE(d.tokens.size() == 18);
  for (const auto& t : d.tokens) CHECK(d.abstract.substr(t.start, t.end - t.start) == t.surface);
  CHECK(d.tokens[5].surface == "Adults");
  CHECK(d.labels[5] == PicoLabel::kPopulation);
  // Token 7 is marked in both participants and interventions.
  CHECK(d.labels[7] == PicoLabel::kPopulation);
  CHECK(d.labels[0] == PicoLabel::kInterventionComparator);
  CHECK(d.labels[10] == PicoLabel::kInterventionComparator);
  CHECK(d.labels[14] == PicoLabel::kOutcome);
  CHECK(d.labels[4] == PicoLabel::kNone);

  REQUIRE(r.report.issues.size() == 1);
  CHECK(r.report.issues[0].doc_id == "1003");
  CHECK(r.report.issues[0].issue == "missing outcomes annotation file");
  for (auto l : r.documents[2].labels) CHECK(l != PicoLabel::kOutcome);
}

TEST_CASE("gold labels from test/gold are read for withheld documents") {
  const auto r = corpus::import_ebm_nlp(kMini);
  const auto& d = r.documents[1];
  CHECK(d.labels[15] == PicoLabel::kOutcome);
  CHECK(d.labels[12] == PicoLabel::kInterventionComparator);
  CHECK(d.labels[9] == PicoLabel::kPopulation);
}

TEST_CASE("import errors") {
  CHECK_THROWS_AS(corpus::import_ebm_nlp(kMini / "does-not-exist"), DataError);
  const fs::path empty = fs::temp_directory_path() / "picoir-empty-release";
  fs::remove_all(empty);
  fs::create_directories(empty);
  CHECK(corpus::import_ebm_nlp(empty).documents.empty());
  fs::remove_all(empty);
}

TEST_CASE("jsonl round trip preserves documents") {
  Corpus c = corpus::import_ebm_nlp(kMini).documents;
  c.push_back(fixture::prostate_trial());
  std::stringstream ss;
  corpus::write_jsonl(ss, c);
  const Corpus back = corpus::read_jsonl(ss);
  CHECK(back == c);
  std::stringstream again;
  corpus::write_jsonl(again, back);
  CHECK(again.str() == ss.str());
}

TEST_CASE("schema errors carry the line and field") {
  std::stringstream ss;
  ss << corpus::to_json(fixture::prostate_trial()).dump() << "\n";
  ss << R"({"id":"x","title":"t","abstract":"ab","tokens":[{"s":0,"e":2}]})" << "\n";
  try {
    corpus::read_jsonl(ss);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.line() == 2);
    CHECK(e.field() == "labels");
  }
  std::stringstream bad;
  bad << R"({"id":"x","title":"t","abstract":"ab","tokens":[{"s":0,"e":5}],"labels":["none"]})"
      << "\n";
  CHECK_THROWS_AS(corpus::read_jsonl(bad), SchemaError);
}

TEST_CASE("segment splits words and punctuation with byte offsets") {
  const auto t = corpus::segment("Men (n=12), aged 50.");
  std::vector<std::string> s;
  for (const auto& x : t) s.push_back(x.surface);
  CHECK(s == std::vector<std::string>{"Men", "(", "n", "=", "12", ")", ",", "aged", "50", "."});
  CHECK(t[1].start == 4);
  CHECK(t[1].end == 5);
}

TEST_CASE("validate flags label length mismatches") {
  auto d = fixture::prostate_trial();
  CHECK(corpus::validate(d).empty());
  d.labels.pop_back();
  CHECK_FALSE(corpus::validate(d).empty());
}

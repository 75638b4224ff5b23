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

#include <map>
#include <set>
#include <sstream>

#include "picoir/errors.hpp"
#include "picoir/fixture.hpp"
#include "picoir/querygen.hpp"

using namespace picoir;
using namespace picoir::querygen;

static Corpus small_corpus(std::size_t n) {
  fixture::SyntheticOptions o;
  o.documents = n;
  return fixture::gold_corpus(fixture::synthesize(o));
}

TEST_CASE("eight instances per eligible document, half positive") {
  const Corpus c = small_corpus(30);
  const auto g = generate_instances(c, 1);
  CHECK(g.excluded_ids.empty());
  REQUIRE(g.instances.size() == 8 * 30);
  std::map<std::string, std::pair<int, int>> per_doc;
  for (const auto& v : g.instances) {
    auto& [pos, neg] = per_doc[v.source_doc_id];
    if (v.relevance == Relevance::kPositive) {
      ++pos;
      CHECK(v.paired_doc_id == v.source_doc_id);
    } else {
      ++neg;
      CHECK(v.paired_doc_id != v.source_doc_id);
    }
  }
  for (const auto& [id, counts] : per_doc) {
    CHECK(counts.first == 4);
    CHECK(counts.second == 4);
  }
}

TEST_CASE("negatives of one source use distinct partners") {
  const auto g = generate_instances(small_corpus(12), 5);
  std::map<std::string, std::set<std::string>> partners;
  for (const auto& v : g.instances) {
    if (v.relevance == Relevance::kNegative) partners[v.source_doc_id].insert(v.paired_doc_id);
  }
  for (const auto& [id, set] : partners) CHECK(set.size() == 4);
}

TEST_CASE("positive masks cover all three elements and the leave-one-out subsets") {
  std::set<std::string> masks;
  for (const auto& m : kPositiveMasks) masks.insert(m.to_string());
  CHECK(masks == std::set<std::string>{"PIO", "PI", "IO", "PO"});
  CHECK(SubsetMask::parse("PO") == SubsetMask{true, false, true});
  CHECK_FALSE(SubsetMask::parse("X").has_value());
}

TEST_CASE("queries follow the clause template") {
  const auto d = fixture::from_markup(
      "d", "T\n[P Adults] got [I aspirin] or [I placebo]; [O stroke] and [O adults] noted.");
  CHECK(synthesize_query(d, {true, true, true}) ==
        "population: Adults; intervention: aspirin, placebo; outcome: stroke, adults");
  CHECK(synthesize_query(d, {false, true, true}) ==
        "intervention: aspirin, placebo; outcome: stroke, adults");
  const auto parsed = parse_query_clauses(synthesize_query(d, {true, false, true}));
  CHECK(parsed[0] == "Adults");
  CHECK(parsed[1].empty());
  CHECK(parsed[2] == "stroke, adults");
  CHECK_THROWS_AS(synthesize_query(d, {false, false, false}), InvalidArgument);
  const auto no_o = fixture::from_markup("e", "[P a] [I b] c");
  CHECK_THROWS_AS(synthesize_query(no_o, {true, true, true}), MissingElement);
}

TEST_CASE("ineligible documents are excluded and reported") {
  Corpus c = small_corpus(8);
  c.push_back(fixture::from_markup("no-outcome", "[P a] [I b] c"));
  const auto g = generate_instances(c, 1);
  CHECK(g.excluded_ids == std::vector<std::string>{"no-outcome"});
  CHECK(g.instances.size() == 64);
  CHECK_THROWS_AS(generate_instances(small_corpus(4), 1), InvalidArgument);
}

TEST_CASE("generation is deterministic per seed") {
  const Corpus c = small_corpus(20);
  const auto a = generate_instances(c, 3).instances;
  CHECK(a == generate_instances(c, 3).instances);
  CHECK(a != generate_instances(c, 4).instances);
  std::stringstream ss;
  write_instances(ss, a);
  CHECK(read_instances(ss) == a);
}

TEST_CASE("split sizes and disjointness") {
  const Corpus c = small_corpus(50);
  const auto s = split(c, 40, 9);
  CHECK(s.train.size() == 40);
  CHECK(s.test.size() == 10);
  std::set<std::string> ids;
  for (const auto& d : s.train) ids.insert(d.id);
  for (const auto& d : s.test) CHECK(ids.count(d.id) == 0);
  CHECK_THROWS_AS(split(c, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(split(c, 50, 1), InvalidArgument);
}

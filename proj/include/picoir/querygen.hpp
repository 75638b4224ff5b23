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

// Synthetic clinician-style queries rendered from gold PICO spans, and the
// positive/negative (query, abstract) instance sets built from them.
//
// Query template, clauses in fixed order and omitted when masked out:
//   "population: <p1>, <p2>; intervention: <i1>; outcome: <o1>, <o2>"

#ifndef PICOIR_QUERYGEN_HPP_
#define PICOIR_QUERYGEN_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "picoir/types.hpp"

namespace picoir::querygen {

inline constexpr std::size_t kMaxQueryWords = 512;
inline constexpr std::size_t kInstancesPerDocument = 8;

struct SubsetMask {
  bool population = true;
  bool intervention = true;
  bool outcome = true;

  bool valid() const { return population || intervention || outcome; }
  bool includes(PicoLabel label) const;
  std::string to_string() const;  // e.g. "PIO", "PI"
  static std::optional<SubsetMask> parse(std::string_view s);

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;
};

// The four positive masks, in generation order.
inline constexpr std::array<SubsetMask, 4> kPositiveMasks = {{
    {true, true, true},
    {true, true, false},
    {false, true, true},
    {true, false, true},
}};

enum class Relevance { kNegative = 0, kPositive = 1 };

struct QueryInstance {
  std::string query_text;
  std::string source_doc_id;
  std::string paired_doc_id;
  Relevance relevance = Relevance::kNegative;
  SubsetMask mask;

  friend bool operator==(const QueryInstance&, const QueryInstance&) = default;
};

// Clause texts of a rendered query, indexed P, I/C, O. Empty when absent.
using QueryClauses = std::array<std::string, 3>;

// Renders "population: ...; intervention: ...; outcome: ..." from the
// non-empty clauses, truncated to kMaxQueryWords whitespace words.
std::string render_query(const QueryClauses& clauses);

// Inverse of render_query. A query that does not start with a clause label
// yields no clauses.
QueryClauses parse_query_clauses(std::string_view query);

// Deduplicated gold phrases of the document, per evidence class.
std::array<std::vector<std::string>, 3> gold_phrases(const AnnotatedDocument& doc);

// Throws MissingElement for an enabled element without gold spans and
// InvalidArgument for an empty mask.
std::string synthesize_query(const AnnotatedDocument& doc, const SubsetMask& mask);

// True iff the document has a gold span of every evidence class.
bool is_eligible(const AnnotatedDocument& doc);

struct GenerationResult {
  std::vector<QueryInstance> instances;
  std::vector<std::string> excluded_ids;  // ineligible documents
};

// Eight instances per eligible document: four positives (kPositiveMasks)
// and the same four queries paired with four distinct other documents.
// Partners are drawn from a substream derived from (seed, document id).
// Throws InvalidArgument when fewer than five documents are eligible.
GenerationResult generate_instances(const Corpus& corpus, std::uint64_t seed);

struct Split {
  Corpus train;
  Corpus test;
};

// Seeded random partition; each side keeps corpus order.
Split split(const Corpus& corpus, std::size_t train_count, std::uint64_t seed);

nlohmann::json to_json(const QueryInstance& instance);
QueryInstance instance_from_json(const nlohmann::json& j, std::size_t line = 0);
void write_instances(std::ostream& out, const std::vector<QueryInstance>& v);
void write_instances(const std::filesystem::path& path,
                     const std::vector<QueryInstance>& v);
std::vector<QueryInstance> read_instances(std::istream& in);
std::vector<QueryInstance> read_instances(const std::filesystem::path& path);

}  // namespace picoir::querygen

#endif  // PICOIR_QUERYGEN_HPP_

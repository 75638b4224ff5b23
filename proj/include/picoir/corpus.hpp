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

// Loading, validating and serializing PICO-annotated abstract corpora.
//
// Two sources are supported: the EBM-NLP release directory (read-only) and
// a normalized JSONL interchange format, one document per line:
//
//   {"id": "...", "title": "...", "abstract": "...",
//    "tokens": [{"s": 0, "e": 5}, ...], "labels": [0, 1, ...],
//    "domain_tag": "cancer"}
//
// Token offsets are byte offsets into "abstract"; labels are PicoLabel
// indices (0 none, 1 population, 2 intervention/comparator, 3 outcome).

#ifndef PICOIR_CORPUS_HPP_
#define PICOIR_CORPUS_HPP_

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "picoir/types.hpp"

namespace picoir::corpus {

// Splits text into word tokens and single-codepoint punctuation tokens,
// keeping original surfaces. This mirrors how annotated corpora tokenize.
std::vector<Token> segment(std::string_view text);

// Empty iff every AnnotatedDocument invariant holds.
std::vector<std::string> validate(const AnnotatedDocument& doc);

// Per-document checks plus id uniqueness.
std::vector<std::string> validate_corpus(const Corpus& corpus);

struct LoadIssue {
  std::string doc_id;
  std::string issue;

  friend bool operator==(const LoadIssue&, const LoadIssue&) = default;
};

struct LoadReport {
  std::vector<LoadIssue> issues;

  void add(std::string doc_id, std::string issue) {
    issues.push_back({std::move(doc_id), std::move(issue)});
  }
  bool empty() const { return issues.empty(); }
};

// Which annotator tier to read when several exist for a document.
enum class SourceTier { kExpert, kCrowd };

enum class AnnotationLayout { kStartingSpans, kHierarchicalLabels };

struct ImportOptions {
  SourceTier tier = SourceTier::kExpert;
  AnnotationLayout layout = AnnotationLayout::kStartingSpans;
};

struct ImportResult {
  Corpus documents;
  LoadReport report;
  // Documents carrying expert (test/gold) annotations: the withheld set.
  std::vector<std::string> withheld_ids;
};

// Reads an EBM-NLP release rooted at root:
//   documents/<id>.text, documents/<id>.tokens (one token per line)
//   annotations/aggregated/<layout>/<element>/train/<id>*.ann
//   annotations/aggregated/<layout>/<element>/test/{gold,crowd}/<id>*.ann
// with element in {participants, interventions, outcomes}. Throws DataError
// if root is not a readable directory; bad documents are skipped and
// reported.
ImportResult import_ebm_nlp(const std::filesystem::path& root,
                            const ImportOptions& options = {});

nlohmann::json to_json(const AnnotatedDocument& doc);
// line is used only for error messages.
AnnotatedDocument document_from_json(const nlohmann::json& j,
                                     std::size_t line = 0);

Corpus read_jsonl(std::istream& in);
Corpus read_jsonl(const std::filesystem::path& path);
void write_jsonl(std::ostream& out, const Corpus& corpus);
void write_jsonl(const std::filesystem::path& path, const Corpus& corpus);

void write_report(const std::filesystem::path& path, const LoadReport& report);

}  // namespace picoir::corpus

#endif  // PICOIR_CORPUS_HPP_

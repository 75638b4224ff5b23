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

// Synthetic trial-abstract corpora for tests, demos and desk-scale
// experiments, plus a small markup format for hand-written documents.

#ifndef PICOIR_FIXTURE_HPP_
#define PICOIR_FIXTURE_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "picoir/types.hpp"

namespace picoir::fixture {

struct SyntheticOptions {
  std::size_t documents = 200;
  // Documents written as expert-annotated test data by write_ebm_nlp.
  std::size_t withheld = 0;
  std::uint64_t seed = 1;
  // Scales every crowd-noise probability; 0 gives crowd labels equal to gold.
  double crowd_noise = 1.0;
};

struct SyntheticDocument {
  AnnotatedDocument gold;
  std::vector<PicoLabel> crowd;  // noisy labels, same length as gold.labels
  bool withheld = false;
};

// Every document has at least one span of each evidence class under both
// the gold and the crowd labels.
std::vector<SyntheticDocument> synthesize(const SyntheticOptions& options);

Corpus gold_corpus(const std::vector<SyntheticDocument>& docs);
Corpus crowd_corpus(const std::vector<SyntheticDocument>& docs);

// Writes the EBM-NLP directory layout: documents/<id>.text and .tokens,
// and annotations/aggregated/starting_spans/<element>/{train,test/gold,
// test/crowd}/<id>.AGGREGATED.ann. Withheld documents get gold files under
// test/gold and crowd files under test/crowd; the rest crowd files under
// train.
void write_ebm_nlp(const std::filesystem::path& root,
                   const std::vector<SyntheticDocument>& docs);

// Parses "[P patients with X] received [I drug] ... [O survival]" into a
// document. The first line is the title. Brackets with an unknown tag,
// nesting, or an unterminated span throw InvalidArgument.
AnnotatedDocument from_markup(std::string id, std::string_view markup,
                              DomainTag domain = DomainTag::kUnknown);

// A locally advanced prostate cancer trial comparing androgen-deprivation
// therapy with and without radiotherapy.
AnnotatedDocument prostate_trial();

}  // namespace picoir::fixture

#endif  // PICOIR_FIXTURE_HPP_

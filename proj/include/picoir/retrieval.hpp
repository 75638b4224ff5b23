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

// Binary relevance scoring of (query, abstract) pairs, ranking, and the
// keyword-fraction baseline.

#ifndef PICOIR_RETRIEVAL_HPP_
#define PICOIR_RETRIEVAL_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "picoir/encoder.hpp"
#include "picoir/linear_model.hpp"
#include "picoir/querygen.hpp"
#include "picoir/types.hpp"

namespace picoir::retrieval {

inline constexpr double kDefaultThreshold = 0.5;

// 30 epochs, learning rate 0.5, L2 1e-4, batch 32.
inline TrainHyper default_hyper() { return TrainHyper{30, 0.5, 1e-4, 1, 32}; }

// Pair features of each instance, labelled by relevance. Encodings of
// repeated queries and documents are computed once. Throws DataError when
// an instance names a document missing from the corpus.
Dataset featurize(const std::vector<querygen::QueryInstance>& instances,
                  const Corpus& corpus, const encoder::PairEncoder& encoder);

// Logistic regression by mini-batch SGD. Throws InvalidArgument unless both
// classes are present.
TrainResult train_relevance(const Dataset& data, const TrainHyper& hyper);

// Throws InvalidArgument on a dimension mismatch.
double logit(const LinearModel& model, const encoder::SparseVector& x);
double score(const LinearModel& model, const encoder::PairFeatures& pair);

struct RankedResult {
  std::string doc_id;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based

  friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

// Score descending, then doc_id ascending.
bool ranks_before(const RankedResult& a, const RankedResult& b);

// Document encodings for repeated ranking over one corpus.
class RankIndex {
 public:
  RankIndex(const Corpus& corpus, const encoder::PairEncoder& encoder);

  std::size_t size() const { return ids_.size(); }
  const encoder::PairEncoder& encoder() const { return *encoder_; }

  // Top k by the learned model; k larger than the corpus returns all.
  std::vector<RankedResult> rank(const LinearModel& model, std::string_view query,
                                 std::size_t k) const;
  // Top k by raw cosine of the query and document representations.
  std::vector<RankedResult> rank_cosine(std::string_view query,
                                        std::size_t k) const;
  // Scores of every document in corpus order.
  std::vector<double> scores(const LinearModel& model, std::string_view query) const;

 private:
  const encoder::PairEncoder* encoder_;
  std::vector<std::string> ids_;
  std::vector<encoder::EncodedText> docs_;
};

std::vector<RankedResult> rank(const LinearModel& model, std::string_view query,
                               const Corpus& corpus, std::size_t k,
                               const encoder::PairEncoder& encoder);

// Sorts by ranks_before, keeps the first k and numbers them from 1.
std::vector<RankedResult> top_k(std::vector<RankedResult> all, std::size_t k);

// Distinct non-stopword query terms. For a templated query only the clause
// contents count, so the clause labels are not keywords.
std::vector<std::string> query_keywords(std::string_view query);
// Distinct non-stopword terms of the whole abstract.
std::vector<std::string> document_keywords(const AnnotatedDocument& doc);

// ceil(threshold * keyword_count), guarded against rounding noise.
std::size_t required_keywords(std::size_t keyword_count, double threshold);

struct KeywordMatch {
  std::string doc_id;
  std::size_t matched = 0;
  double fraction = 0.0;  // matched / query keywords, 1 for an empty query
};

// Matches of every document, in corpus order.
std::vector<KeywordMatch> keyword_matches(std::string_view query,
                                          const Corpus& corpus);
// Number of query keywords present in the sorted document keyword set.
std::size_t keyword_overlap(const std::vector<std::string>& query_kw,
                            const std::vector<std::string>& doc_kw);
// Fraction of query keywords present in the sorted document keyword set.
double keyword_fraction(const std::vector<std::string>& query_kw,
                        const std::vector<std::string>& doc_kw);

// Documents containing at least required_keywords(...) query keywords,
// ordered by matched fraction descending then doc_id.
std::vector<std::string> keyword_retrieve(std::string_view query,
                                          const Corpus& corpus, double threshold);

// A trained model together with the encoder that produced its features.
struct RelevanceModel {
  encoder::PairEncoder encoder;
  LinearModel model;

  nlohmann::json to_json() const;
  // Dense models need the embedding table they were trained with.
  static RelevanceModel from_json(const nlohmann::json& j,
                                  const encoder::EmbeddingTable* embeddings = nullptr);
  void save(const std::filesystem::path& path) const;
  static RelevanceModel load(const std::filesystem::path& path,
                             const encoder::EmbeddingTable* embeddings = nullptr);
};

}  // namespace picoir::retrieval

#endif  // PICOIR_RETRIEVAL_HPP_

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

// Token-level PICO tagging and span post-processing.
//
// Each token is classified into one of four classes by a softmax-regression
// model over window features; adjacent tokens with the same label are then
// merged into phrases and repeated phrases dropped.

#ifndef PICOIR_PICO_HPP_
#define PICOIR_PICO_HPP_

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "picoir/encoder.hpp"
#include "picoir/linear_model.hpp"
#include "picoir/metrics.hpp"
#include "picoir/types.hpp"

namespace picoir::pico {

struct ExtractionResult {
  std::vector<PicoSpan> population;
  std::vector<PicoSpan> intervention_comparator;
  std::vector<PicoSpan> outcome;

  // label must not be kNone.
  const std::vector<PicoSpan>& of(PicoLabel label) const;
  std::vector<PicoSpan>& of(PicoLabel label);
  bool empty() const {
    return population.empty() && intervention_comparator.empty() &&
           outcome.empty();
  }

  friend bool operator==(const ExtractionResult&, const ExtractionResult&) = default;
};

// Maximal runs of equal non-None labels, in order, without deduplication.
std::vector<PicoSpan> label_runs(std::span<const Token> tokens,
                                 std::span<const PicoLabel> labels);

// label_runs, then per class drop spans whose case-folded text was already
// seen. Throws InvalidArgument on a length mismatch.
ExtractionResult extract_spans(std::span<const Token> tokens,
                               std::span<const PicoLabel> labels);

nlohmann::json to_json(const ExtractionResult& result,
                       const std::optional<std::string>& doc_id = std::nullopt);

enum class TokenBackend { kOneHot, kDense };

struct TokenFeatureConfig {
  std::size_t window = 2;  // neighbours each side, at most kMaxWindow
  bool use_casing = true;
  bool use_position = true;
  TokenBackend backend = TokenBackend::kOneHot;
  std::size_t min_df = 1;  // vocabulary cut-off for the one-hot backend

  static constexpr std::size_t kMaxWindow = 5;
  static constexpr std::size_t kPositionBins = 10;

  friend bool operator==(const TokenFeatureConfig&, const TokenFeatureConfig&) = default;
};

// Maps (document, token index) to a feature vector.
//
// One-hot layout: 2 * window + 1 blocks of |V| + 1 slots. Block 0 is the
// token itself, then offsets -1, +1, -2, +2, ...; the last slot of a block
// marks an out-of-vocabulary token. Neighbours beyond the document leave
// their block empty. Then one casing slot (token starts uppercase) and ten
// relative-position bins, each present only when enabled.
//
// Dense layout: mean of the imported vectors of the window tokens (keyed by
// case-folded surface; tokens without a vector are skipped), followed by the
// same casing and position slots.
class TokenFeaturizer {
 public:
  TokenFeaturizer() = default;
  // Throws InvalidArgument when window > kMaxWindow or the backend does not
  // match the supplied resources.
  TokenFeaturizer(TokenFeatureConfig config, encoder::Vocabulary vocab);
  TokenFeaturizer(TokenFeatureConfig config, encoder::EmbeddingTable embeddings);

  const TokenFeatureConfig& config() const { return config_; }
  const encoder::Vocabulary& vocabulary() const { return vocab_; }
  std::size_t dimension() const;

  // Throws InvalidArgument when index is out of range.
  encoder::SparseVector features(const AnnotatedDocument& doc,
                                 std::size_t index) const;

  std::size_t block_size() const { return vocab_.size() + 1; }
  std::size_t block_count() const { return 2 * config_.window + 1; }

 private:
  std::size_t extras_offset() const;

  TokenFeatureConfig config_;
  encoder::Vocabulary vocab_;
  encoder::EmbeddingTable embeddings_;
};

inline encoder::SparseVector token_features(const AnnotatedDocument& doc,
                                            std::size_t index,
                                            const TokenFeaturizer& featurizer) {
  return featurizer.features(doc, index);
}

// Vocabulary over the case-folded token surfaces of the documents.
encoder::Vocabulary token_vocabulary(const Corpus& docs, std::size_t min_df);

struct PicoTagger {
  TokenFeaturizer featurizer;
  LinearModel model;

  nlohmann::json to_json() const;
  // Dense taggers need the token embeddings they were trained with.
  static PicoTagger from_json(const nlohmann::json& j,
                              const encoder::EmbeddingTable* embeddings = nullptr);
  void save(const std::filesystem::path& path) const;
  static PicoTagger load(const std::filesystem::path& path,
                         const encoder::EmbeddingTable* embeddings = nullptr);
};

struct PicoTrainResult {
  PicoTagger tagger;
  std::vector<double> loss_trace;
};

// Featurizes all tokens of the documents as a training set.
Dataset token_dataset(const Corpus& docs, const TokenFeaturizer& featurizer);

// Throws InvalidArgument listing any class with no training token.
PicoTrainResult train_pico(const Corpus& train_docs,
                           const TokenFeatureConfig& config,
                           const TrainHyper& hyper,
                           const encoder::EmbeddingTable* embeddings = nullptr);

// Argmax per token; ties go to the lower class index.
std::vector<PicoLabel> predict_labels(const LinearModel& model,
                                      const AnnotatedDocument& doc,
                                      const TokenFeaturizer& featurizer);

inline std::vector<PicoLabel> predict_labels(const PicoTagger& tagger,
                                             const AnnotatedDocument& doc) {
  return predict_labels(tagger.model, doc, tagger.featurizer);
}

ExtractionResult extract(const PicoTagger& tagger, const AnnotatedDocument& doc);

struct PicoReport {
  eval::EvalReport tokens;
  eval::ClassMetrics micro;  // over the three evidence classes
  eval::ClassMetrics macro;
  eval::ClassMetrics spans;  // exact-match label runs
  std::size_t documents = 0;

  nlohmann::json to_json() const;
};

// Token-level scores of predicted against gold labels. Throws
// InvalidArgument on an empty test set.
PicoReport evaluate_labels(const Corpus& test_docs,
                           const std::vector<std::vector<PicoLabel>>& predicted);
PicoReport evaluate_pico(const PicoTagger& tagger, const Corpus& test_docs);

}  // namespace picoir::pico

#endif  // PICOIR_PICO_HPP_

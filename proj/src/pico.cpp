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

#include "picoir/pico.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <tuple>
#include <unordered_set>

#include "picoir/errors.hpp"
#include "picoir/text.hpp"

namespace picoir::pico {

using encoder::SparseVector;
using nlohmann::json;

const std::vector<PicoSpan>& ExtractionResult::of(PicoLabel label) const {
  switch (label) {
    case PicoLabel::kPopulation:
      return population;
    case PicoLabel::kInterventionComparator:
      return intervention_comparator;
    case PicoLabel::kOutcome:
      return outcome;
    case PicoLabel::kNone:
      break;
  }
  throw InvalidArgument("no span list for label 'none'");
}

std::vector<PicoSpan>& ExtractionResult::of(PicoLabel label) {
  return const_cast<std::vector<PicoSpan>&>(
      static_cast<const ExtractionResult&>(*this).of(label));
}

std::vector<PicoSpan> label_runs(std::span<const Token> tokens,
                                 std::span<const PicoLabel> labels) {
  if (tokens.size() != labels.size()) {
    throw InvalidArgument("labels length " + std::to_string(labels.size()) +
                          " differs from tokens length " +
                          std::to_string(tokens.size()));
  }
  std::vector<PicoSpan> runs;
  std::size_t i = 0;
  while (i < labels.size()) {
    if (labels[i] == PicoLabel::kNone) {
      ++i;
      continue;
    }
    std::size_t j = i + 1;
    while (j < labels.size() && labels[j] == labels[i]) ++j;
    PicoSpan span{labels[i], i, j, {}};
    for (std::size_t t = i; t < j; ++t) {
      if (t > i) span.text.push_back(' ');
      span.text.append(tokens[t].surface);
    }
    runs.push_back(std::move(span));
    i = j;
  }
  return runs;
}

ExtractionResult extract_spans(std::span<const Token> tokens,
                               std::span<const PicoLabel> labels) {
  ExtractionResult out;
  std::array<std::unordered_set<std::string>, kPicoClassCount> seen;
  for (auto& span : label_runs(tokens, labels)) {
    auto& bucket = seen[static_cast<std::size_t>(span.label)];
    if (!bucket.insert(text::casefold(span.text)).second) continue;
    out.of(span.label).push_back(std::move(span));
  }
  return out;
}

json to_json(const ExtractionResult& r, const std::optional<std::string>& doc_id) {
  auto list = [](const std::vector<PicoSpan>& spans) {
    json a = json::array();
    for (const auto& s : spans) {
      a.push_back({{"text", s.text},
                   {"token_start", s.token_start},
                   {"token_end", s.token_end}});
    }
    return a;
  };
  json j;
  j["doc_id"] = doc_id ? json(*doc_id) : json(nullptr);
  j["population"] = list(r.population);
  j["intervention_comparator"] = list(r.intervention_comparator);
  j["outcome"] = list(r.outcome);
  return j;
}

// ---------------------------------------------------------------------------
// Features

namespace {

void check_window(const TokenFeatureConfig& config) {
  if (config.window > TokenFeatureConfig::kMaxWindow) {
    throw InvalidArgument("window " + std::to_string(config.window) +
                          " exceeds maximum " +
                          std::to_string(TokenFeatureConfig::kMaxWindow));
  }
}

bool starts_uppercase(const std::string& surface) {
  const auto cps = text::decode_utf8(surface);
  return !cps.empty() && text::to_lower(cps[0].value) != cps[0].value;
}

// Offsets in block order: 0, -1, +1, -2, +2, ...
long block_offset(std::size_t block) {
  if (block == 0) return 0;
  const long step = static_cast<long>((block + 1) / 2);
  return block % 2 == 1 ? -step : step;
}

std::string_view backend_name(TokenBackend b) {
  return b == TokenBackend::kOneHot ? "onehot" : "dense";
}

}  // namespace

TokenFeaturizer::TokenFeaturizer(TokenFeatureConfig config,
                                 encoder::Vocabulary vocab)
    : config_(config), vocab_(std::move(vocab)) {
  check_window(config_);
  if (config_.backend != TokenBackend::kOneHot) {
    throw InvalidArgument("dense token features need an embedding table");
  }
}

TokenFeaturizer::TokenFeaturizer(TokenFeatureConfig config,
                                 encoder::EmbeddingTable embeddings)
    : config_(config), embeddings_(std::move(embeddings)) {
  check_window(config_);
  if (config_.backend != TokenBackend::kDense) {
    throw InvalidArgument("one-hot token features need a vocabulary");
  }
  (void)embeddings_.dimension();  // throws when empty
}

std::size_t TokenFeaturizer::extras_offset() const {
  if (config_.backend == TokenBackend::kDense) return embeddings_.dimension();
  return block_count() * block_size();
}

std::size_t TokenFeaturizer::dimension() const {
  return extras_offset() + (config_.use_casing ? 1 : 0) +
         (config_.use_position ? TokenFeatureConfig::kPositionBins : 0);
}

SparseVector TokenFeaturizer::features(const AnnotatedDocument& doc,
                                       std::size_t index) const {
  const std::size_t n = doc.tokens.size();
  if (index >= n) {
    throw InvalidArgument("token index " + std::to_string(index) +
                          " out of range for " + std::to_string(n) + " tokens");
  }
  std::vector<std::pair<std::uint32_t, double>> entries;
  if (config_.backend == TokenBackend::kOneHot) {
    const std::size_t bs = block_size();
    for (std::size_t b = 0; b < block_count(); ++b) {
      const long pos = static_cast<long>(index) + block_offset(b);
      if (pos < 0 || pos >= static_cast<long>(n)) continue;
      const auto term = text::casefold(doc.tokens[static_cast<std::size_t>(pos)].surface);
      const std::size_t slot = vocab_.index(term).value_or(vocab_.size());
      entries.emplace_back(static_cast<std::uint32_t>(b * bs + slot), 1.0);
    }
  } else {
    const std::size_t dim = embeddings_.dimension();
    std::vector<double> sum(dim, 0.0);
    std::size_t found = 0;
    for (std::size_t b = 0; b < block_count(); ++b) {
      const long pos = static_cast<long>(index) + block_offset(b);
      if (pos < 0 || pos >= static_cast<long>(n)) continue;
      const auto* v = embeddings_.find(
          text::casefold(doc.tokens[static_cast<std::size_t>(pos)].surface));
      if (v == nullptr) continue;
      for (std::size_t d = 0; d < dim; ++d) sum[d] += (*v)[d];
      ++found;
    }
    if (found > 0) {
      for (std::size_t d = 0; d < dim; ++d) {
        entries.emplace_back(static_cast<std::uint32_t>(d),
                             sum[d] / static_cast<double>(found));
      }
    }
  }
  std::size_t next = extras_offset();
  if (config_.use_casing) {
    if (starts_uppercase(doc.tokens[index].surface)) {
      entries.emplace_back(static_cast<std::uint32_t>(next), 1.0);
    }
    ++next;
  }
  if (config_.use_position) {
    const std::size_t bin =
        std::min(TokenFeatureConfig::kPositionBins - 1,
                 index * TokenFeatureConfig::kPositionBins / n);
    entries.emplace_back(static_cast<std::uint32_t>(next + bin), 1.0);
  }
  return SparseVector(dimension(), std::move(entries));
}

encoder::Vocabulary token_vocabulary(const Corpus& docs, std::size_t min_df) {
  std::map<std::string, std::size_t> df;
  for (const auto& doc : docs) {
    std::set<std::string> seen;
    for (const auto& t : doc.tokens) seen.insert(text::casefold(t.surface));
    for (const auto& term : seen) ++df[term];
  }
  std::vector<std::string> terms;
  std::vector<std::size_t> counts;
  for (const auto& [term, n] : df) {
    if (n < std::max<std::size_t>(min_df, 1)) continue;
    terms.push_back(term);
    counts.push_back(n);
  }
  return encoder::Vocabulary(std::move(terms), std::move(counts), docs.size());
}

// ---------------------------------------------------------------------------
// Tagger

json PicoTagger::to_json() const {
  const auto& c = featurizer.config();
  json feat{{"window", c.window},
            {"use_casing", c.use_casing},
            {"use_position", c.use_position},
            {"backend", std::string(backend_name(c.backend))},
            {"min_df", c.min_df}};
  if (c.backend == TokenBackend::kOneHot) {
    feat["vocab"] = featurizer.vocabulary().to_json();
  }
  return json{{"kind", "pico_tagger"}, {"features", std::move(feat)},
              {"model", model.to_json()}};
}

PicoTagger PicoTagger::from_json(const json& j,
                                 const encoder::EmbeddingTable* embeddings) {
  try {
    if (j.at("kind").get<std::string>() != "pico_tagger") {
      throw DataError("not a PICO tagger model");
    }
    const json& f = j.at("features");
    TokenFeatureConfig c;
    c.window = f.at("window").get<std::size_t>();
    c.use_casing = f.at("use_casing").get<bool>();
    c.use_position = f.at("use_position").get<bool>();
    c.min_df = f.at("min_df").get<std::size_t>();
    const auto backend = f.at("backend").get<std::string>();
    PicoTagger t;
    if (backend == "onehot") {
      c.backend = TokenBackend::kOneHot;
      t.featurizer = TokenFeaturizer(c, encoder::Vocabulary::from_json(f.at("vocab")));
    } else if (backend == "dense") {
      c.backend = TokenBackend::kDense;
      if (embeddings == nullptr) {
        throw DataError("dense PICO tagger needs its token embeddings");
      }
      t.featurizer = TokenFeaturizer(c, *embeddings);
    } else {
      throw DataError("unknown token feature backend '" + backend + "'");
    }
    t.model = LinearModel::from_json(j.at("model"));
    if (t.model.class_count() != kPicoClassCount ||
        t.model.dimension() != t.featurizer.dimension()) {
      throw DataError("PICO model shape does not match its features");
    }
    return t;
  } catch (const json::exception& e) {
    throw DataError(std::string("malformed PICO tagger: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw DataError(std::string("malformed PICO tagger: ") + e.what());
  }
}

void PicoTagger::save(const std::filesystem::path& path) const {
  save_json(path, to_json());
}

PicoTagger PicoTagger::load(const std::filesystem::path& path,
                            const encoder::EmbeddingTable* embeddings) {
  return from_json(load_json(path), embeddings);
}

Dataset token_dataset(const Corpus& docs, const TokenFeaturizer& featurizer) {
  Dataset data(featurizer.dimension(), kPicoClassCount);
  for (const auto& doc : docs) {
    if (doc.labels.size() != doc.tokens.size()) {
      throw InvalidArgument("document " + doc.id + " has mismatched labels");
    }
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      data.add(featurizer.features(doc, i),
               static_cast<std::uint32_t>(doc.labels[i]));
    }
  }
  return data;
}

PicoTrainResult train_pico(const Corpus& train_docs,
                           const TokenFeatureConfig& config,
                           const TrainHyper& hyper,
                           const encoder::EmbeddingTable* embeddings) {
  std::array<std::size_t, kPicoClassCount> counts{};
  for (const auto& doc : train_docs) {
    for (auto l : doc.labels) ++counts[static_cast<std::size_t>(l)];
  }
  std::string missing;
  for (std::size_t c = 0; c < kPicoClassCount; ++c) {
    if (counts[c] == 0) {
      if (!missing.empty()) missing += ", ";
      missing += label_name(static_cast<PicoLabel>(c));
    }
  }
  if (!missing.empty()) {
    throw InvalidArgument("training data has no tokens of class: " + missing);
  }

  PicoTrainResult result;
  if (config.backend == TokenBackend::kOneHot) {
    result.tagger.featurizer =
        TokenFeaturizer(config, token_vocabulary(train_docs, config.min_df));
  } else {
    if (embeddings == nullptr) {
      throw InvalidArgument("dense token features need an embedding table");
    }
    result.tagger.featurizer = TokenFeaturizer(config, *embeddings);
  }
  const Dataset data = token_dataset(train_docs, result.tagger.featurizer);
  auto trained = train_sgd(data, Objective::kSoftmax, hyper);
  result.tagger.model = std::move(trained.model);
  result.loss_trace = std::move(trained.loss_trace);
  return result;
}

std::vector<PicoLabel> predict_labels(const LinearModel& model,
                                      const AnnotatedDocument& doc,
                                      const TokenFeaturizer& featurizer) {
  if (model.class_count() != kPicoClassCount) {
    throw InvalidArgument("PICO prediction needs a 4-class model");
  }
  if (model.dimension() != featurizer.dimension()) {
    throw InvalidArgument("model dimension " + std::to_string(model.dimension()) +
                          " does not match feature dimension " +
                          std::to_string(featurizer.dimension()));
  }
  std::vector<PicoLabel> out;
  out.reserve(doc.tokens.size());
  for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
    const auto z = model.logits(featurizer.features(doc, i));
    const auto best = std::max_element(z.begin(), z.end()) - z.begin();
    out.push_back(static_cast<PicoLabel>(best));
  }
  return out;
}

ExtractionResult extract(const PicoTagger& tagger, const AnnotatedDocument& doc) {
  const auto labels = predict_labels(tagger, doc);
  return extract_spans(doc.tokens, labels);
}

// ---------------------------------------------------------------------------
// Evaluation

PicoReport evaluate_labels(const Corpus& test_docs,
                           const std::vector<std::vector<PicoLabel>>& predicted) {
  if (test_docs.empty()) throw InvalidArgument("empty PICO test set");
  if (predicted.size() != test_docs.size()) {
    throw InvalidArgument("one prediction list per test document required");
  }
  eval::ConfusionMatrix matrix(kPicoClassCount);
  std::size_t span_tp = 0;
  std::size_t span_pred = 0;
  std::size_t span_gold = 0;
  for (std::size_t d = 0; d < test_docs.size(); ++d) {
    const auto& doc = test_docs[d];
    const auto& pred = predicted[d];
    if (pred.size() != doc.labels.size()) {
      throw InvalidArgument("prediction length mismatch for document " + doc.id);
    }
    for (std::size_t i = 0; i < pred.size(); ++i) {
      matrix.add(static_cast<std::size_t>(doc.labels[i]),
                 static_cast<std::size_t>(pred[i]));
    }
    const auto gold_runs = label_runs(doc.tokens, doc.labels);
    const auto pred_runs = label_runs(doc.tokens, pred);
    std::set<std::tuple<int, std::size_t, std::size_t>> gold_keys;
    for (const auto& s : gold_runs) {
      gold_keys.emplace(label_index(s.label), s.token_start, s.token_end);
    }
    for (const auto& s : pred_runs) {
      span_tp += gold_keys.count({label_index(s.label), s.token_start, s.token_end});
    }
    span_pred += pred_runs.size();
    span_gold += gold_runs.size();
  }
  PicoReport report;
  report.documents = test_docs.size();
  if (matrix.total() == 0) throw InvalidArgument("PICO test set has no tokens");
  report.tokens = eval::make_report(matrix);
  constexpr std::array<std::size_t, 3> kEvidence = {1, 2, 3};
  report.micro = eval::micro_average(matrix, kEvidence);
  report.macro = eval::macro_average(matrix, kEvidence);
  auto ratio = [](std::size_t a, std::size_t b) {
    return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
  };
  report.spans.precision = ratio(span_tp, span_pred);
  report.spans.recall = ratio(span_tp, span_gold);
  report.spans.f1 = ratio(2 * span_tp, span_pred + span_gold);
  return report;
}

PicoReport evaluate_pico(const PicoTagger& tagger, const Corpus& test_docs) {
  if (test_docs.empty()) throw InvalidArgument("empty PICO test set");
  std::vector<std::vector<PicoLabel>> predicted;
  predicted.reserve(test_docs.size());
  for (const auto& doc : test_docs) predicted.push_back(predict_labels(tagger, doc));
  return evaluate_labels(test_docs, predicted);
}

json PicoReport::to_json() const {
  json per_class = json::object();
  for (std::size_t c = 0; c < kPicoClassCount; ++c) {
    per_class[std::string(label_name(static_cast<PicoLabel>(c)))] =
        eval::to_json(tokens.metrics.per_class[c]);
  }
  return json{{"documents", documents},
              {"token_accuracy", tokens.metrics.accuracy},
              {"micro", eval::to_json(micro)},
              {"macro", eval::to_json(macro)},
              {"span_exact", eval::to_json(spans)},
              {"per_class", std::move(per_class)},
              {"confusion", tokens.confusion.to_json()}};
}

}  // namespace picoir::pico
